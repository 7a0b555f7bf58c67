#pragma once

// Adaptive Dormand-Prince 5(4) integration of scalar angle equations
//   d(angle)/dt = rhs(t, angle)
// with the angle carried as a continuous real lift (never reduced mod 2*pi).

#include <array>
#include <functional>
#include <span>
#include <vector>

namespace zgkn {

struct Tolerances {
  double rel = 1e-10;
  double abs = 1e-12;
};

/// Right-hand side of an angle equation; must be 2*pi-periodic in the angle.
struct AngleField {
  std::function<double(double t, double angle)> rhs;
  double t_lo = 0.0;
  double t_hi = 0.0;
};

struct LiftNode {
  double t;
  double lift;
  double slope;  // rhs(t, lift)
  // Quartic on [t, next t] in s = (x - t) / (next t - t), power basis; taken
  // from the integrator's continuous extension. Cubic Hermite otherwise.
  std::array<double, 5> dense{};
  bool has_dense = false;
};

/// Accepted steps of one integration, stored with t strictly increasing
/// regardless of the direction of integration.
class LiftedTrajectory {
 public:
  LiftedTrajectory() = default;
  LiftedTrajectory(std::vector<LiftNode> nodes, double t_start, double t_end, Tolerances tol);

  std::span<const LiftNode> nodes() const noexcept { return nodes_; }
  bool empty() const noexcept { return nodes_.empty(); }
  double t_min() const { return nodes_.front().t; }
  double t_max() const { return nodes_.back().t; }

  /// Where integration started and ended (t_start > t_end for backward runs).
  double t_start() const noexcept { return t_start_; }
  double t_end() const noexcept { return t_end_; }
  double initial_lift() const;
  double final_lift() const;

  const Tolerances& tolerances() const noexcept { return tol_; }

  /// Dense output (fourth order within each accepted step); t is clamped
  /// to [t_min, t_max].
  double operator()(double t) const;

  /// Same trajectory with every lift value moved by `offset`.
  LiftedTrajectory shifted(double offset) const;

  /// Joins `left` (ending at the matching point) and `right` (starting there)
  /// into one ascending trajectory. The matching node of `right` is dropped.
  static LiftedTrajectory stitch(const LiftedTrajectory& left, const LiftedTrajectory& right);

 private:
  std::vector<LiftNode> nodes_;
  double t_start_ = 0.0;
  double t_end_ = 0.0;
  Tolerances tol_{};
};

struct IntegratorLimits {
  double max_angle_step = 1.0;  // radians per accepted step
  long max_steps = 2'000'000;
};

/// Integrates from t0 to t1 (either direction) starting at lift y0.
/// Throws SolverError(StepSizeUnderflow) when the controller asks for a step
/// below 1e-14 * |t1 - t0|, and SolverError(NonFiniteField) on NaN/inf slopes.
LiftedTrajectory integrate_lifted(const AngleField& field, double t0, double t1, double y0,
                                  Tolerances tol, IntegratorLimits limits = {});

/// Identifies which saddle-connector family a lift change belongs to.
struct WindingConvention {
  enum class Kind { Theta, Omega };
  Kind kind = Kind::Theta;
  double energy = 0.0;  // only read for Kind::Omega

  static WindingConvention theta() { return {Kind::Theta, 0.0}; }
  static WindingConvention omega(double energy) { return {Kind::Omega, energy}; }

  /// Ideal lift change for winding `n`.
  double target(int n) const;
};

inline constexpr double kWindingWindow = 0.3;

/// Theta: delta = -(2N+1)*pi.  Omega: delta = pi - 2*acos(E) - 2*pi*N.
/// Throws SolverError(NotNearTarget) if no target lies within kWindingWindow.
int lift_to_winding(double delta_lift, const WindingConvention& convention);

}  // namespace zgkn
