#pragma once

// Angular (theta) half of the separated problem in Prufer form:
//   dTheta/dtheta = -2 a cos(theta) cos(Theta)
//                   + 2 (a E sin(theta) - kappa / sin(theta)) sin(Theta) + 2 lambda
// Eigenvalues lambda are the values for which Theta connects the saddle at
// theta = 0 to the saddle at theta = pi.

#include <optional>
#include <span>
#include <vector>

#include "zgkn/odeflow.hpp"

namespace zgkn {

struct AngularContext {
  double a = 0.0;
  double E = 0.0;
  int two_kappa = 1;

  double kappa() const noexcept { return 0.5 * two_kappa; }
};

struct AngularOptions {
  double eps = 1e-6;  // distance kept from the singular endpoints
  Tolerances ode{1e-10, 1e-12};
  double root_tol = 1e-11;  // on lambda
  double match = 0.0;       // matching angle; 0 selects pi/2
};

/// Throws SolverError(DomainBoundary) unless 0 < theta < pi.
double theta_rhs(double theta, double Theta, const AngularContext& ctx, double lambda);

/// Start lift at theta = 0: 0 for kappa > 0, pi for kappa < 0.
double theta_start_lift(int two_kappa) noexcept;

/// Result of one shot. The left half is integrated forward from the theta = 0
/// saddle, the right half backward from the theta = pi saddle (anchored at the
/// N_theta = 0 endpoint), and the two are compared at the matching angle.
struct ThetaShot {
  double delta_lift;  // -pi + mismatch; equals -(2 N_theta + 1) pi on a connector
  double mismatch;    // left minus right at the matching angle; increasing in lambda
  LiftedTrajectory profile;
};

ThetaShot shoot_theta(const AngularContext& ctx, double lambda, const AngularOptions& opts = {});

/// Single forward sweep from eps to pi - eps with first-order corrections at
/// both ends. Ill-conditioned near the repelling end for large |kappa|; used
/// for diagnostics and the monotonicity property.
double sweep_theta(const AngularContext& ctx, double lambda, const AngularOptions& opts = {});

struct BracketConfig {
  double half_width = 2.0;
  double step = 0.25;
  int max_widenings = 8;
  std::optional<double> seed;  // defaults to the ring-radius-zero eigenvalue
};

struct AngularSolution {
  double lambda = 0.0;
  int winding = 0;
  LiftedTrajectory profile;
  double residual = 0.0;  // |lift miss| at the returned lambda, radians
  double bracket_width = 0.0;
};

/// Finds the unique lambda whose connector has winding n_theta.
/// Throws SolverError(BracketNotFound) when widening fails.
AngularSolution solve_lambda(const AngularContext& ctx, int n_theta, const BracketConfig& bracket = {},
                             const AngularOptions& opts = {});

/// Eigenvalue of the ring-radius-zero angular operator:
/// k = -sgn(N) (|N| + |kappa| - 1/2). Throws SolverError(ZeroN) for N = 0.
int exact_k(int big_n, int two_kappa);

/// N in terms of N_theta: N_theta + 1 for N_theta >= 0, N_theta otherwise.
int big_n_from_winding(int n_theta) noexcept;

/// Closed-form connector of the ring-radius-zero Theta equation built from
/// Jacobi polynomials, lifted continuously across the poles of the ratio and
/// normalised to start at theta_start_lift(two_kappa).
class ExactThetaProfile {
 public:
  ExactThetaProfile(int big_n, int two_kappa);

  double operator()(double theta) const;
  const std::vector<double>& poles() const noexcept { return poles_; }

 private:
  double principal(double theta) const;

  int big_n_;
  int two_kappa_;
  std::vector<double> poles_;
  std::vector<double> jumps_;
  double offset_ = 0.0;
};

double exact_theta_profile(int big_n, int two_kappa, double theta);

/// S(theta) from d ln S / dtheta = -a cos(theta) sin(Theta)
///   - (a E sin(theta) - kappa / sin(theta)) cos(Theta), normalised S(pi/2) = 1.
/// Grid points must lie inside the solution's profile range.
std::vector<double> angular_amplitude(const AngularContext& ctx, const AngularSolution& solution,
                                      std::span<const double> thetas);

/// Uniform grid of `points` angles on [eps, pi - eps].
std::vector<double> theta_grid(double eps, int points);

}  // namespace zgkn
