#include "zgkn/odeflow.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <utility>

#include "zgkn/error.hpp"

namespace zgkn {

namespace {

// Dormand-Prince 5(4) tableau.
constexpr double c2 = 1.0 / 5, c3 = 3.0 / 10, c4 = 4.0 / 5, c5 = 8.0 / 9;
constexpr double a21 = 1.0 / 5;
constexpr double a31 = 3.0 / 40, a32 = 9.0 / 40;
constexpr double a41 = 44.0 / 45, a42 = -56.0 / 15, a43 = 32.0 / 9;
constexpr double a51 = 19372.0 / 6561, a52 = -25360.0 / 2187, a53 = 64448.0 / 6561,
                 a54 = -212.0 / 729;
constexpr double a61 = 9017.0 / 3168, a62 = -355.0 / 33, a63 = 46732.0 / 5247,
                 a64 = 49.0 / 176, a65 = -5103.0 / 18656;
constexpr double b1 = 35.0 / 384, b3 = 500.0 / 1113, b4 = 125.0 / 192, b5 = -2187.0 / 6784,
                 b6 = 11.0 / 84;
// b(5th) - b(4th)
constexpr double e1 = 71.0 / 57600, e3 = -71.0 / 16695, e4 = 71.0 / 1920,
                 e5 = -17253.0 / 339200, e6 = 22.0 / 525, e7 = -1.0 / 40;

// Continuous extension (Hairer & Wanner, DOPRI5 contd5).
constexpr double d1 = -12715105075.0 / 11282082432.0, d3 = 87487479700.0 / 32700410799.0,
                 d4 = -10690763975.0 / 1880347072.0, d5 = 701980252875.0 / 199316789632.0,
                 d6 = -1453857185.0 / 822651844.0, d7 = 69997945.0 / 29380423.0;

// PI controller constants (Hairer & Wanner, DOPRI5).
constexpr double kBeta = 0.04;
constexpr double kExpo = 0.2 - kBeta * 0.75;
constexpr double kSafety = 0.9;
constexpr double kFacMin = 0.2;
constexpr double kFacMax = 10.0;

double checked(double value, double t, double y) {
  if (!std::isfinite(value)) {
    throw SolverError(ErrorCode::NonFiniteField,
                      "rhs(" + std::to_string(t) + ", " + std::to_string(y) + ") is not finite");
  }
  return value;
}

double initial_step(const AngleField& f, double t0, double y0, double f0, double dir, double span,
                    const Tolerances& tol) {
  const double sc = tol.abs + tol.rel * std::abs(y0);
  const double d0 = std::abs(y0) / sc;
  const double d1 = std::abs(f0) / sc;
  double h0 = (d0 < 1e-5 || d1 < 1e-5) ? 1e-6 * span : 0.01 * d0 / d1;
  h0 = std::min(h0, span);
  const double y1 = y0 + dir * h0 * f0;
  const double f1 = checked(f.rhs(t0 + dir * h0, y1), t0 + dir * h0, y1);
  const double d2 = std::abs(f1 - f0) / sc / h0;
  const double dmax = std::max(d1, d2);
  const double h1 = dmax <= 1e-15 ? std::max(1e-6 * span, h0 * 1e-3) : std::pow(0.01 / dmax, 0.2);
  return std::min({100.0 * h0, h1, span});
}

// Power-basis coefficients of the step interpolant in theta = (t - t_old) / hs,
// reflected to s = 1 - theta when the step ran backward.
std::array<double, 5> step_polynomial(double y, double y_new, double hs, double k1, double k3, double k4,
                                      double k5, double k6, double k7) {
  const double ydiff = y_new - y;
  const double bspl = hs * k1 - ydiff;
  const double r3 = bspl;
  const double r4 = ydiff - hs * k7 - bspl;
  const double r5 = hs * (d1 * k1 + d3 * k3 + d4 * k4 + d5 * k5 + d6 * k6 + d7 * k7);
  const double A = r4 + r5;
  std::array<double, 5> p{y, ydiff + r3, A - r3, -(A + r5), r5};
  if (hs > 0.0) return p;
  // q(s) = p(1 - s)
  constexpr std::array<std::array<double, 5>, 5> binom{{{1, 0, 0, 0, 0},
                                                        {1, 1, 0, 0, 0},
                                                        {1, 2, 1, 0, 0},
                                                        {1, 3, 3, 1, 0},
                                                        {1, 4, 6, 4, 1}}};
  std::array<double, 5> q{};
  for (int j = 0; j < 5; ++j) {
    for (int i = 0; i <= j; ++i) q[i] += p[j] * binom[j][i] * ((i % 2) ? -1.0 : 1.0);
  }
  return q;
}

}  // namespace

LiftedTrajectory::LiftedTrajectory(std::vector<LiftNode> nodes, double t_start, double t_end,
                                   Tolerances tol)
    : nodes_(std::move(nodes)), t_start_(t_start), t_end_(t_end), tol_(tol) {}

double LiftedTrajectory::initial_lift() const {
  return t_start_ <= t_end_ ? nodes_.front().lift : nodes_.back().lift;
}

double LiftedTrajectory::final_lift() const {
  return t_start_ <= t_end_ ? nodes_.back().lift : nodes_.front().lift;
}

double LiftedTrajectory::operator()(double t) const {
  if (nodes_.empty()) throw SolverError(ErrorCode::InvalidArgument, "empty trajectory");
  if (t <= nodes_.front().t) return nodes_.front().lift;
  if (t >= nodes_.back().t) return nodes_.back().lift;
  auto hi = std::upper_bound(nodes_.begin(), nodes_.end(), t,
                             [](double x, const LiftNode& n) { return x < n.t; });
  const LiftNode& p = *(hi - 1);
  const LiftNode& q = *hi;
  const double h = q.t - p.t;
  const double s = (t - p.t) / h;
  if (p.has_dense) {
    const auto& c = p.dense;
    return c[0] + s * (c[1] + s * (c[2] + s * (c[3] + s * c[4])));
  }
  const double s2 = s * s;
  const double s3 = s2 * s;
  const double h00 = 2 * s3 - 3 * s2 + 1;
  const double h10 = s3 - 2 * s2 + s;
  const double h01 = -2 * s3 + 3 * s2;
  const double h11 = s3 - s2;
  return h00 * p.lift + h10 * h * p.slope + h01 * q.lift + h11 * h * q.slope;
}

LiftedTrajectory LiftedTrajectory::shifted(double offset) const {
  auto copy = nodes_;
  for (auto& n : copy) {
    n.lift += offset;
    n.dense[0] += offset;
  }
  return {std::move(copy), t_start_, t_end_, tol_};
}

LiftedTrajectory LiftedTrajectory::stitch(const LiftedTrajectory& left,
                                          const LiftedTrajectory& right) {
  std::vector<LiftNode> nodes(left.nodes_.begin(), left.nodes_.end());
  auto it = right.nodes_.begin();
  while (it != right.nodes_.end() && !nodes.empty() && it->t <= nodes.back().t) {
    // The dropped matching node carries the interpolant of the next step.
    if (it->t == nodes.back().t && it->has_dense) {
      nodes.back().dense = it->dense;
      nodes.back().has_dense = true;
    }
    ++it;
  }
  nodes.insert(nodes.end(), it, right.nodes_.end());
  return {std::move(nodes), left.t_min(), right.t_max(), left.tol_};
}

LiftedTrajectory integrate_lifted(const AngleField& field, double t0, double t1, double y0,
                                  Tolerances tol, IntegratorLimits limits) {
  if (!(tol.rel > 0.0) || !(tol.abs > 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "tolerances must be positive");
  }
  if (!(t0 != t1) || !std::isfinite(t0) || !std::isfinite(t1) || !std::isfinite(y0)) {
    throw SolverError(ErrorCode::InvalidArgument, "integration interval must be finite and nonempty");
  }
  const double lo = std::min(t0, t1);
  const double hi = std::max(t0, t1);
  if (field.t_lo < field.t_hi && (lo < field.t_lo || hi > field.t_hi)) {
    throw SolverError(ErrorCode::InvalidArgument, "interval leaves the field's domain");
  }

  const double dir = t1 > t0 ? 1.0 : -1.0;
  const double span = hi - lo;
  const double h_min = 1e-14 * span;

  std::vector<LiftNode> nodes;
  double t = t0;
  double y = y0;
  double k1 = checked(field.rhs(t, y), t, y);
  nodes.push_back({t, y, k1});

  double h = initial_step(field, t0, y0, k1, dir, span, tol);
  double err_old = 1e-4;
  bool last_rejected = false;
  long steps = 0;

  while (dir * (t1 - t) > 0.0) {
    if (++steps > limits.max_steps) {
      throw SolverError(ErrorCode::StepSizeUnderflow, "step budget exhausted");
    }
    const bool final_step = h >= std::abs(t1 - t);
    if (final_step) h = std::abs(t1 - t);
    if (h < h_min && !final_step) {
      throw SolverError(ErrorCode::StepSizeUnderflow,
                        "step " + std::to_string(h) + " below floor near t=" + std::to_string(t));
    }
    const double hs = dir * h;
    const auto eval = [&](double tt, double yy) { return checked(field.rhs(tt, yy), tt, yy); };
    const double k2 = eval(t + c2 * hs, y + hs * a21 * k1);
    const double k3 = eval(t + c3 * hs, y + hs * (a31 * k1 + a32 * k2));
    const double k4 = eval(t + c4 * hs, y + hs * (a41 * k1 + a42 * k2 + a43 * k3));
    const double k5 = eval(t + c5 * hs, y + hs * (a51 * k1 + a52 * k2 + a53 * k3 + a54 * k4));
    const double t_new = final_step ? t1 : t + hs;
    const double k6 =
        eval(t_new, y + hs * (a61 * k1 + a62 * k2 + a63 * k3 + a64 * k4 + a65 * k5));
    const double y_new = y + hs * (b1 * k1 + b3 * k3 + b4 * k4 + b5 * k5 + b6 * k6);
    const double k7 = eval(t_new, y_new);
    const double err_est = hs * (e1 * k1 + e3 * k3 + e4 * k4 + e5 * k5 + e6 * k6 + e7 * k7);
    const double sc = tol.abs + tol.rel * std::max(std::abs(y), std::abs(y_new));
    const double err = std::abs(err_est) / sc;
    const bool angle_ok = std::abs(y_new - y) <= limits.max_angle_step;

    if (err <= 1.0 && angle_ok) {
      const double fac = std::pow(std::max(err, 1e-12), kExpo) / std::pow(err_old, kBeta);
      double h_new = h / std::clamp(fac / kSafety, 1.0 / kFacMax, 1.0 / kFacMin);
      if (last_rejected) h_new = std::min(h_new, h);
      err_old = std::max(err, 1e-4);
      const auto poly = step_polynomial(y, y_new, hs, k1, k3, k4, k5, k6, k7);
      t = t_new;
      y = y_new;
      k1 = k7;
      nodes.push_back({t, y, k1});
      // The interval belongs to whichever end has the smaller t.
      LiftNode& owner = dir > 0 ? nodes[nodes.size() - 2] : nodes.back();
      owner.dense = poly;
      owner.has_dense = true;
      h = h_new;
      last_rejected = false;
    } else {
      const double shrink = angle_ok ? std::min(1.0 / kFacMin, std::pow(err, kExpo) / kSafety)
                                     : 2.0 * std::abs(y_new - y) / limits.max_angle_step;
      h /= std::max(shrink, 1.5);
      last_rejected = true;
    }
  }

  if (dir < 0) std::reverse(nodes.begin(), nodes.end());
  return {std::move(nodes), t0, t1, tol};
}

double WindingConvention::target(int n) const {
  constexpr double pi = std::numbers::pi;
  if (kind == Kind::Theta) return -(2.0 * n + 1.0) * pi;
  return pi - 2.0 * std::acos(energy) - 2.0 * pi * n;
}

int lift_to_winding(double delta_lift, const WindingConvention& convention) {
  constexpr double pi = std::numbers::pi;
  if (!std::isfinite(delta_lift)) {
    throw SolverError(ErrorCode::NotNearTarget, "lift change is not finite");
  }
  double estimate = 0.0;
  if (convention.kind == WindingConvention::Kind::Theta) {
    estimate = (-delta_lift / pi - 1.0) / 2.0;
  } else {
    if (!(convention.energy > -1.0 && convention.energy < 1.0)) {
      throw SolverError(ErrorCode::InvalidArgument, "Omega convention needs |E| < 1");
    }
    estimate = (pi - 2.0 * std::acos(convention.energy) - delta_lift) / (2.0 * pi);
  }
  const int n = static_cast<int>(std::lround(estimate));
  const double miss = delta_lift - convention.target(n);
  if (std::abs(miss) > kWindingWindow) {
    throw SolverError(ErrorCode::NotNearTarget,
                      "lift change " + std::to_string(delta_lift) + " misses nearest target by " +
                          std::to_string(miss));
  }
  return n;
}

}  // namespace zgkn
