#pragma once

// Radial half of the separated problem in Prufer form (m = 1):
//   dOmega/dr = 2 (r/w) cos(Omega) + 2 (lambda/w) sin(Omega)
//               + 2 (a kappa + gamma r) / w^2 - 2 E,        w = sqrt(r^2 + a^2)
// A bound state needs an orbit from Omega(-inf) = -pi + acos(E) to
// Omega(+inf) = -acos(E) - 2 pi N_omega.

#include <optional>
#include <span>
#include <vector>

#include "zgkn/odeflow.hpp"

namespace zgkn {

struct RadialContext {
  double a = 0.0;
  double gamma = -0.3;
  int two_kappa = 1;
  double lambda = 0.0;
  double E = 0.5;

  double kappa() const noexcept { return 0.5 * two_kappa; }
  double eta() const noexcept;
};

struct RadialOptions {
  Tolerances ode{1e-10, 1e-12};
  std::optional<double> r_match;  // default: matching_point(ctx), capped at r0 / 2
  double tail_tol = 1e-8;
  bool check_tail = false;  // re-run at twice the cutoff
};

double omega_rhs(double r, double Omega, const RadialContext& ctx);

/// max(200, 40 / sqrt(1 - E^2)).
double default_cutoff(double E);

/// lambda^2 / (2 |gamma|), near the inner turning point of the centrifugal
/// barrier. Inside it the bound solution decays towards r = 0 like r^|k| and
/// a backward shot through that region loses its phase.
double matching_point(const RadialContext& ctx);

/// Lift at r = -r0 on the orbit leaving the left saddle-node, to third order in 1/r0.
double omega_start_lift(const RadialContext& ctx, double r0);
/// Lift at r = +r0 on the orbit entering the right saddle-node (N_omega = 0
/// branch), to third order in 1/r0.
double omega_end_lift(const RadialContext& ctx, double r0);

struct RadialShot {
  double delta_lift = 0.0;  // pi - 2 acos(E) + mismatch
  double mismatch = 0.0;    // left minus right at r_match; decreasing in E
  std::optional<int> winding;
  LiftedTrajectory profile;
  double cutoff = 0.0;
  double r_match = 0.0;
  double tail_residual = 0.0;  // |delta_lift(2 r0) - delta_lift(r0)|; 0 unless checked
};

/// Two-sided shot: forward from -r0, backward from +r0, matched at r_match.
/// Throws SolverError(InvalidArgument) for E outside (0, 1) or a cutoff below
/// 10 max(1/eta, a), and SolverError(CutoffTooSmall) when the doubling check
/// moves delta_lift by more than 100 tail_tol.
RadialShot shoot_omega(const RadialContext& ctx, double r0, const RadialOptions& opts = {});

struct RadialAmplitude {
  std::vector<double> R;
  std::vector<double> u;
  std::vector<double> v;
  double eta = 0.0;
  double slope_right = 0.0;  // d ln R / dr at +r0
  double slope_left = 0.0;   // d ln R / d|r| at -r0
};

/// R(r) by quadrature of d ln R/dr = (r/w) sin(Omega) - (lambda/w) cos(Omega)
/// with R(0) = 1, and u = sqrt(2) R cos(Omega/2), v = sqrt(2) R sin(Omega/2).
/// Throws SolverError(NonDecayingTail) if the two halves miss each other by
/// more than 1e-5 (mod 2 pi) or either outward log-slope differs by more than
/// 10% from its two-term asymptote -eta -+ gamma E / (eta r0).
RadialAmplitude radial_amplitude(const RadialContext& ctx, const RadialShot& shot,
                                 std::span<const double> rs);

std::vector<double> uniform_grid(double lo, double hi, int points);

// --- ring radius zero, r > 0 only ---------------------------------------

struct HalfLineContext {
  int k = -1;
  double gamma = -0.2;
  double E = 0.5;
};

/// Attracting equilibrium at r = 0+: asin(-gamma/k) for k < 0,
/// -pi - asin(-gamma/k) for k > 0.
double halfline_origin_lift(int k, double gamma);

struct HalfLineOptions {
  Tolerances ode{1e-11, 1e-13};
  double eps = 1e-6;
  double cutoff_scale = 1.0;  // multiplies default_cutoff(E)
  double energy_tol = 1e-14;
  int scan_points = 64;
};

struct HalfLineShot {
  double delta_lift = 0.0;  // Omega(inf) - Omega(0); -2 pi M - acos(E) - Omega(0) on a connector
  double mismatch = 0.0;    // -2 pi M on a connector
  LiftedTrajectory profile;
  double cutoff = 0.0;
};

HalfLineShot shoot_omega_halfline(const HalfLineContext& ctx, const HalfLineOptions& opts = {});

struct HalfLineSolution {
  double E = 0.0;
  double residual = 0.0;
  HalfLineShot shot;
};

/// Energy of the connector with M windings. Throws SolverError(NoRootInGap)
/// when the scan finds no sign change.
HalfLineSolution solve_halfline_energy(int k, double gamma, int M, const HalfLineOptions& opts = {});

}  // namespace zgkn
