#include "zgkn/radial.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "zgkn/error.hpp"

namespace zgkn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kConnectorTol = 1e-5;

void check_energy(double E) {
  if (!(E > 0.0 && E < 1.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "E = " + std::to_string(E) + " outside the gap (0, 1)");
  }
}

double eta_of(double E) { return std::sqrt((1.0 - E) * (1.0 + E)); }

RadialShot shoot_once(const RadialContext& ctx, double r0, double rm, const RadialOptions& opts) {
  const AngleField field{[ctx](double r, double y) { return omega_rhs(r, y, ctx); }, -kInf, kInf};
  const LiftedTrajectory left = integrate_lifted(field, -r0, rm, omega_start_lift(ctx, r0), opts.ode);
  const LiftedTrajectory right = integrate_lifted(field, r0, rm, omega_end_lift(ctx, r0), opts.ode);

  RadialShot shot;
  shot.cutoff = r0;
  shot.r_match = rm;
  shot.mismatch = left.final_lift() - right.final_lift();
  shot.delta_lift = kPi - 2.0 * std::acos(ctx.E) + shot.mismatch;
  try {
    shot.winding = lift_to_winding(shot.delta_lift, WindingConvention::omega(ctx.E));
  } catch (const SolverError&) {
    shot.winding.reset();
  }
  const double wrap = 2.0 * kPi * std::round(shot.mismatch / (2.0 * kPi));
  shot.profile = LiftedTrajectory::stitch(left, right.shifted(wrap));
  return shot;
}

}  // namespace

double RadialContext::eta() const noexcept { return eta_of(E); }

double omega_rhs(double r, double Omega, const RadialContext& ctx) {
  const double w2 = r * r + ctx.a * ctx.a;
  const double w = std::sqrt(w2);
  return 2.0 * (r / w) * std::cos(Omega) + 2.0 * (ctx.lambda / w) * std::sin(Omega) +
         2.0 * (ctx.a * ctx.kappa() + ctx.gamma * r) / w2 - 2.0 * ctx.E;
}

double default_cutoff(double E) {
  check_energy(E);
  return std::max(200.0, 40.0 / eta_of(E));
}

double matching_point(const RadialContext& ctx) {
  if (!(ctx.gamma < 0.0)) return 0.0;
  return ctx.lambda * ctx.lambda / (2.0 * std::abs(ctx.gamma));
}

namespace {

// Omega = Omega_inf + c1/r + c2/r^2 + c3/r^3 (r signed) substituted into the
// phase equation and matched order by order; s = sgn(r).
double tail_lift(const RadialContext& ctx, double r) {
  const double s = r > 0.0 ? 1.0 : -1.0;
  const double eta = ctx.eta();
  const double E = ctx.E;
  const double lam = ctx.lambda;
  const double a2 = ctx.a * ctx.a;
  const double c1 = lam - s * ctx.gamma / eta;
  const double c2 = s * (-c1 + E * c1 * c1 - 2.0 * lam * E * c1 - 2.0 * ctx.a * ctx.kappa() + a2 * E) / (2.0 * eta);
  const double c3 = (eta * c1 * c1 * c1 / 3.0 - eta * lam * c1 * c1 + a2 * eta * (c1 - lam) +
                     s * (2.0 * E * c1 * c2 - 2.0 * c2 * (E * lam + 1.0) + 2.0 * a2 * ctx.gamma)) /
                    (2.0 * eta);
  const double inf = s > 0.0 ? -std::acos(E) : -kPi + std::acos(E);
  return inf + c1 / r + c2 / (r * r) + c3 / (r * r * r);
}

}  // namespace

double omega_start_lift(const RadialContext& ctx, double r0) { return tail_lift(ctx, -r0); }

double omega_end_lift(const RadialContext& ctx, double r0) { return tail_lift(ctx, r0); }

RadialShot shoot_omega(const RadialContext& ctx, double r0, const RadialOptions& opts) {
  check_energy(ctx.E);
  if (ctx.two_kappa % 2 == 0) throw SolverError(ErrorCode::InvalidArgument, "2*kappa must be odd");
  if (!(ctx.a > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "ring radius must be positive");
  if (!(r0 > 10.0 * std::max(1.0 / ctx.eta(), ctx.a))) {
    throw SolverError(ErrorCode::InvalidArgument, "cutoff " + std::to_string(r0) + " below 10 max(1/eta, a)");
  }
  const double rm = opts.r_match ? *opts.r_match : std::min(matching_point(ctx), 0.5 * r0);
  if (!(std::abs(rm) < r0)) throw SolverError(ErrorCode::InvalidArgument, "matching point outside cutoff");

  RadialShot shot = shoot_once(ctx, r0, rm, opts);
  if (opts.check_tail) {
    const RadialShot doubled = shoot_once(ctx, 2.0 * r0, rm, opts);
    shot.tail_residual = std::abs(doubled.delta_lift - shot.delta_lift);
    if (shot.tail_residual > 100.0 * opts.tail_tol) {
      throw SolverError(ErrorCode::CutoffTooSmall,
                        "doubling the cutoff moved the lift by " + std::to_string(shot.tail_residual));
    }
  }
  return shot;
}

RadialAmplitude radial_amplitude(const RadialContext& ctx, const RadialShot& shot, std::span<const double> rs) {
  const LiftedTrajectory& prof = shot.profile;
  if (prof.empty()) throw SolverError(ErrorCode::InvalidArgument, "shot has no profile");
  const auto log_slope = [&](double r) {
    const double w = std::sqrt(r * r + ctx.a * ctx.a);
    const double Om = prof(r);
    return (r / w) * std::sin(Om) - (ctx.lambda / w) * std::cos(Om);
  };
  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;

  // Off a root the two halves decay separately but do not join; carrying
  // either one through the matching point would grow.
  const double jump = std::remainder(shot.mismatch, 2.0 * kPi);
  if (std::abs(jump) > kConnectorTol) {
    throw SolverError(ErrorCode::NonDecayingTail,
                      "Omega jumps by " + std::to_string(jump) + " at the matching point");
  }

  RadialAmplitude amp;
  amp.eta = ctx.eta();
  const double r0 = shot.cutoff;
  amp.slope_right = log_slope(r0);
  amp.slope_left = -log_slope(-r0);
  const double coulomb = ctx.gamma * ctx.E / (amp.eta * r0);
  const double want_right = -amp.eta - coulomb;
  const double want_left = -amp.eta + coulomb;
  if (std::abs(amp.slope_right - want_right) > 0.1 * amp.eta ||
      std::abs(amp.slope_left - want_left) > 0.1 * amp.eta) {
    throw SolverError(ErrorCode::NonDecayingTail,
                      "tail log-slopes " + std::to_string(amp.slope_left) + ", " +
                          std::to_string(amp.slope_right) + " vs -eta = " + std::to_string(-amp.eta));
  }

  std::vector<std::size_t> order(rs.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return rs[x] < rs[y]; });
  const auto split = std::partition_point(order.begin(), order.end(), [&](std::size_t i) { return rs[i] < 0.0; });

  std::vector<double> logR(rs.size());
  double x = 0.0, acc = 0.0;
  for (auto it = split; it != order.end(); ++it) {
    const double r = rs[*it];
    if (r > prof.t_max()) throw SolverError(ErrorCode::DomainBoundary, "grid leaves the profile");
    if (r > x) acc += Quad::integrate(log_slope, x, r, 15, 1e-12);
    x = r;
    logR[*it] = acc;
  }
  x = 0.0;
  acc = 0.0;
  for (auto it = std::make_reverse_iterator(split); it != order.rend(); ++it) {
    const double r = rs[*it];
    if (r < prof.t_min()) throw SolverError(ErrorCode::DomainBoundary, "grid leaves the profile");
    acc -= Quad::integrate(log_slope, r, x, 15, 1e-12);
    x = r;
    logR[*it] = acc;
  }

  amp.R.resize(rs.size());
  amp.u.resize(rs.size());
  amp.v.resize(rs.size());
  for (std::size_t i = 0; i < rs.size(); ++i) {
    const double R = std::exp(logR[i]);
    const double Om = prof(rs[i]);
    amp.R[i] = R;
    amp.u[i] = std::sqrt(2.0) * R * std::cos(0.5 * Om);
    amp.v[i] = std::sqrt(2.0) * R * std::sin(0.5 * Om);
  }
  return amp;
}

std::vector<double> uniform_grid(double lo, double hi, int points) {
  if (points < 1) return {};
  if (points == 1) return {0.5 * (lo + hi)};
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[i] = lo + (hi - lo) * i / (points - 1);
  grid.back() = hi;
  return grid;
}

double halfline_origin_lift(int k, double gamma) {
  if (k == 0) throw SolverError(ErrorCode::InvalidArgument, "k must be nonzero");
  const double s = std::asin(-gamma / k);
  return k < 0 ? s : -kPi - s;
}

HalfLineShot shoot_omega_halfline(const HalfLineContext& ctx, const HalfLineOptions& opts) {
  check_energy(ctx.E);
  if (!(ctx.gamma < 0.0 && ctx.gamma * ctx.gamma < double(ctx.k) * ctx.k)) {
    throw SolverError(ErrorCode::InvalidArgument, "need gamma < 0 and gamma^2 < k^2");
  }
  const double E = ctx.E;
  const double eta = eta_of(E);
  const double k = ctx.k;
  const double g = ctx.gamma;
  const double rho = std::sqrt(k * k - g * g);
  const double r0 = opts.cutoff_scale * default_cutoff(E);
  const double rm = 1.0 / eta;

  const AngleField field{[=](double r, double y) {
                           return 2.0 * std::cos(y) + 2.0 * (k / r) * std::sin(y) + 2.0 * g / r - 2.0 * E;
                         },
                         0.0, kInf};
  const double origin = halfline_origin_lift(ctx.k, g);
  const double slope = 2.0 * (std::cos(origin) - E) / (1.0 + 2.0 * rho);
  const double y_left = origin + slope * opts.eps;
  // The a = 0 limit of the ring tail with lambda = k.
  const double y_right = omega_end_lift({0.0, g, 1, k, E}, r0);

  const LiftedTrajectory left = integrate_lifted(field, opts.eps, rm, y_left, opts.ode);
  const LiftedTrajectory right = integrate_lifted(field, r0, rm, y_right, opts.ode);

  HalfLineShot shot;
  shot.cutoff = r0;
  shot.mismatch = left.final_lift() - right.final_lift();
  shot.delta_lift = -std::acos(E) - origin + shot.mismatch;
  const double wrap = 2.0 * kPi * std::round(shot.mismatch / (2.0 * kPi));
  shot.profile = LiftedTrajectory::stitch(left, right.shifted(wrap));
  return shot;
}

HalfLineSolution solve_halfline_energy(int k, double gamma, int M, const HalfLineOptions& opts) {
  if (M < 0) throw SolverError(ErrorCode::InvalidArgument, "M must be nonnegative");
  const auto miss = [&](double E) {
    return shoot_omega_halfline({k, gamma, E}, opts).mismatch + 2.0 * kPi * M;
  };
  // Scan 1 - E on a log grid from 0.5 down to 1e-6; miss decreases with E.
  const int n = std::max(opts.scan_points, 2);
  double e_prev = 0.5;
  double f_prev = miss(e_prev);
  for (int i = 1; i < n; ++i) {
    const double gap = 0.5 * std::pow(2e-6, static_cast<double>(i) / (n - 1));
    const double e = 1.0 - gap;
    const double f = miss(e);
    if ((f_prev > 0.0) != (f > 0.0) || f == 0.0) {
      double root = e;
      if (f != 0.0) {
        std::uintmax_t max_iter = 200;
        const double tol = opts.energy_tol;
        const auto stop = [tol](double x, double y) { return std::abs(y - x) <= tol; };
        const auto [lo, hi] = boost::math::tools::toms748_solve(miss, e_prev, e, f_prev, f, stop, max_iter);
        root = 0.5 * (lo + hi);
      }
      HalfLineSolution sol;
      sol.E = root;
      sol.shot = shoot_omega_halfline({k, gamma, root}, opts);
      sol.residual = std::abs(sol.shot.mismatch + 2.0 * kPi * M);
      return sol;
    }
    e_prev = e;
    f_prev = f;
  }
  throw SolverError(ErrorCode::NoRootInGap, "no half-line connector with M = " + std::to_string(M));
}

}  // namespace zgkn
