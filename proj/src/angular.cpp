#include "zgkn/angular.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numbers>
#include <string>

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/tools/toms748_solve.hpp>

#include "zgkn/error.hpp"
#include "zgkn/hydrogen.hpp"

namespace zgkn {

namespace {

constexpr double kPi = std::numbers::pi;

int sgn(int x) { return (x > 0) - (x < 0); }

void check_context(const AngularContext& ctx) {
  if (ctx.two_kappa % 2 == 0) throw SolverError(ErrorCode::InvalidArgument, "2*kappa must be odd");
  if (!(ctx.a >= 0.0)) throw SolverError(ErrorCode::InvalidArgument, "a must be >= 0");
}

void check_eps(double eps) {
  if (!(eps > 0.0 && eps < 1e-3)) throw SolverError(ErrorCode::InvalidArgument, "eps must lie in (0, 1e-3)");
}

AngleField make_field(const AngularContext& ctx, double lambda) {
  return {[ctx, lambda](double t, double y) { return theta_rhs(t, y, ctx, lambda); }, 0.0, kPi};
}

// First-order Frobenius slopes of the connector at the two saddles.
double left_slope(const AngularContext& ctx, double lambda, double start) {
  return (2.0 * lambda - 2.0 * ctx.a * std::cos(start)) / (1.0 + std::abs(ctx.two_kappa));
}

double right_slope(const AngularContext& ctx, double lambda, double end) {
  return -(2.0 * lambda + 2.0 * ctx.a * std::cos(end)) / (1.0 + std::abs(ctx.two_kappa));
}

}  // namespace

double theta_rhs(double theta, double Theta, const AngularContext& ctx, double lambda) {
  if (!(theta > 0.0 && theta < kPi)) {
    throw SolverError(ErrorCode::DomainBoundary, "theta = " + std::to_string(theta) + " outside (0, pi)");
  }
  const double s = std::sin(theta);
  return -2.0 * ctx.a * std::cos(theta) * std::cos(Theta) +
         2.0 * (ctx.a * ctx.E * s - ctx.kappa() / s) * std::sin(Theta) + 2.0 * lambda;
}

double theta_start_lift(int two_kappa) noexcept { return two_kappa > 0 ? 0.0 : kPi; }

ThetaShot shoot_theta(const AngularContext& ctx, double lambda, const AngularOptions& opts) {
  check_context(ctx);
  check_eps(opts.eps);
  const double eps = opts.eps;
  const double match = opts.match > 0.0 ? opts.match : 0.5 * kPi;
  const AngleField field = make_field(ctx, lambda);

  const double start = theta_start_lift(ctx.two_kappa);
  const double end = start - kPi;
  const double y_left = start + left_slope(ctx, lambda, start) * eps;
  const double y_right = end + right_slope(ctx, lambda, end) * eps;

  const LiftedTrajectory left = integrate_lifted(field, eps, match, y_left, opts.ode);
  const LiftedTrajectory right = integrate_lifted(field, kPi - eps, match, y_right, opts.ode);

  ThetaShot shot;
  shot.mismatch = left.final_lift() - right.final_lift();
  shot.delta_lift = (end - start) + shot.mismatch;
  const double wrap = 2.0 * kPi * std::round(shot.mismatch / (2.0 * kPi));
  shot.profile = LiftedTrajectory::stitch(left, right.shifted(wrap));
  return shot;
}

double sweep_theta(const AngularContext& ctx, double lambda, const AngularOptions& opts) {
  check_context(ctx);
  check_eps(opts.eps);
  const double eps = opts.eps;
  const double start = theta_start_lift(ctx.two_kappa);
  const double y0 = start + left_slope(ctx, lambda, start) * eps;
  const LiftedTrajectory traj = integrate_lifted(make_field(ctx, lambda), eps, kPi - eps, y0, opts.ode);
  // cos of every admissible end lift equals cos(start - pi).
  const double d = right_slope(ctx, lambda, start - kPi);
  return traj.final_lift() - d * eps - start;
}

int exact_k(int big_n, int two_kappa) {
  if (big_n == 0) throw SolverError(ErrorCode::ZeroN, "N must be nonzero");
  // |N| + |kappa| - 1/2 = |N| + (|2 kappa| - 1)/2
  return -sgn(big_n) * (std::abs(big_n) + (std::abs(two_kappa) - 1) / 2);
}

int big_n_from_winding(int n_theta) noexcept { return n_theta >= 0 ? n_theta + 1 : n_theta; }

AngularSolution solve_lambda(const AngularContext& ctx, int n_theta, const BracketConfig& bracket,
                             const AngularOptions& opts) {
  check_context(ctx);
  if (!(bracket.step > 0.0) || !(bracket.half_width > 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "bracket step and width must be positive");
  }
  const double target = -2.0 * kPi * n_theta;
  const auto miss = [&](double lambda) { return shoot_theta(ctx, lambda, opts).mismatch - target; };

  const double centre =
      bracket.seed ? *bracket.seed : static_cast<double>(exact_k(big_n_from_winding(n_theta), ctx.two_kappa));
  double lo = centre;
  double f_lo = miss(lo);
  double root = centre;
  double width = 0.0;
  if (f_lo != 0.0) {
    const double dir = f_lo < 0.0 ? 1.0 : -1.0;
    double step = bracket.step;
    double reach = bracket.half_width;
    double travelled = 0.0;
    int widenings = 0;
    double hi = 0.0;
    double f_hi = 0.0;
    for (;;) {
      hi = lo + dir * step;
      f_hi = miss(hi);
      if (f_hi == 0.0 || (f_hi < 0.0) != (f_lo < 0.0)) break;
      lo = hi;
      f_lo = f_hi;
      travelled += step;
      if (travelled >= reach) {
        if (++widenings > bracket.max_widenings) {
          throw SolverError(ErrorCode::BracketNotFound,
                            "no lambda sign change within " + std::to_string(travelled) + " of " +
                                std::to_string(centre) + " for N_theta = " + std::to_string(n_theta));
        }
        step *= 2.0;
        reach *= 2.0;
      }
    }
    if (f_hi == 0.0) {
      root = hi;
    } else {
      if (lo > hi) {
        std::swap(lo, hi);
        std::swap(f_lo, f_hi);
      }
      std::uintmax_t max_iter = 200;
      const double tol = opts.root_tol;
      const auto stop = [tol](double x, double y) { return std::abs(y - x) <= tol; };
      const auto [a, b] = boost::math::tools::toms748_solve(miss, lo, hi, f_lo, f_hi, stop, max_iter);
      root = 0.5 * (a + b);
      width = b - a;
    }
  }

  AngularSolution sol;
  ThetaShot shot = shoot_theta(ctx, root, opts);
  sol.lambda = root;
  sol.bracket_width = width;
  sol.residual = std::abs(shot.mismatch - target);
  sol.winding = lift_to_winding(shot.delta_lift, WindingConvention::theta());
  sol.profile = std::move(shot.profile);
  if (sol.winding != n_theta) {
    throw SolverError(ErrorCode::NotNearTarget, "converged connector has winding " +
                                                    std::to_string(sol.winding) + ", wanted " +
                                                    std::to_string(n_theta));
  }
  return sol;
}

ExactThetaProfile::ExactThetaProfile(int big_n, int two_kappa) : big_n_(big_n), two_kappa_(two_kappa) {
  if (big_n == 0) throw SolverError(ErrorCode::ZeroN, "N must be nonzero");
  if (two_kappa % 2 == 0) throw SolverError(ErrorCode::InvalidArgument, "2*kappa must be odd");
  // Pin the branch so the lift starts where the shooter does (0 or pi).
  const double at_zero = two_kappa < 0 ? (big_n > 0 ? kPi : -kPi) : 0.0;
  offset_ = theta_start_lift(two_kappa) - at_zero;
  const int degree = std::abs(big_n) - 1;
  if (degree == 0) return;
  const double ak = 0.5 * std::abs(two_kappa);
  const auto denom = [&](double theta) { return jacobi_P(degree, ak - 0.5, ak + 0.5, std::cos(theta)); };
  constexpr int samples = 20000;
  double t_prev = 0.0;
  double f_prev = denom(t_prev);
  for (int i = 1; i <= samples; ++i) {
    const double t = kPi * i / samples;
    const double f = denom(t);
    if ((f < 0) != (f_prev < 0)) {
      double lo = t_prev, hi = t;
      for (int it = 0; it < 200 && hi - lo > 1e-15; ++it) {
        const double mid = 0.5 * (lo + hi);
        if ((denom(mid) < 0) == (f_prev < 0)) lo = mid; else hi = mid;
      }
      poles_.push_back(0.5 * (lo + hi));
    }
    t_prev = t;
    f_prev = f;
  }
  for (double p : poles_) {
    const double delta = 1e-7;
    const double jump = principal(p + delta) - principal(p - delta);
    jumps_.push_back(-2.0 * kPi * std::round(jump / (2.0 * kPi)));
  }
}

double ExactThetaProfile::principal(double theta) const {
  const int degree = std::abs(big_n_) - 1;
  const double ak = 0.5 * std::abs(two_kappa_);
  const double c = std::cos(theta);
  const double num = jacobi_P(degree, ak + 0.5, ak - 0.5, c);
  const double den = jacobi_P(degree, ak - 0.5, ak + 0.5, c);
  const double shift = two_kappa_ < 0 ? kPi : 0.0;
  return -sgn(big_n_) * (2.0 * std::atan(num / den * std::tan(0.5 * theta)) - shift);
}

double ExactThetaProfile::operator()(double theta) const {
  if (!(theta > 0.0 && theta < kPi)) throw SolverError(ErrorCode::DomainBoundary, "theta outside (0, pi)");
  double value = principal(theta) + offset_;
  for (std::size_t i = 0; i < poles_.size() && poles_[i] < theta; ++i) value += jumps_[i];
  return value;
}

double exact_theta_profile(int big_n, int two_kappa, double theta) {
  return ExactThetaProfile(big_n, two_kappa)(theta);
}

std::vector<double> angular_amplitude(const AngularContext& ctx, const AngularSolution& solution,
                                      std::span<const double> thetas) {
  if (solution.profile.empty()) throw SolverError(ErrorCode::InvalidArgument, "solution has no profile");
  const auto& prof = solution.profile;
  const double kappa = ctx.kappa();
  const auto integrand = [&](double t) {
    const double Th = prof(t);
    const double s = std::sin(t);
    return -ctx.a * std::cos(t) * std::sin(Th) - (ctx.a * ctx.E * s - kappa / s) * std::cos(Th);
  };
  using Quad = boost::math::quadrature::gauss_kronrod<double, 15>;
  const double mid = 0.5 * kPi;

  std::vector<double> out(thetas.size());
  // Accumulate outward from pi/2 so each piece is integrated once.
  std::vector<std::size_t> order(thetas.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return thetas[x] < thetas[y]; });
  const auto split = std::partition_point(order.begin(), order.end(),
                                          [&](std::size_t i) { return thetas[i] < mid; });
  double x = mid, acc = 0.0;
  for (auto it = split; it != order.end(); ++it) {
    const double t = thetas[*it];
    if (t > prof.t_max()) throw SolverError(ErrorCode::DomainBoundary, "grid leaves the profile");
    if (t > x) acc += Quad::integrate(integrand, x, t, 15, 1e-12);
    x = t;
    out[*it] = std::exp(acc);
  }
  x = mid;
  acc = 0.0;
  for (auto it = std::make_reverse_iterator(split); it != order.rend(); ++it) {
    const double t = thetas[*it];
    if (t < prof.t_min()) throw SolverError(ErrorCode::DomainBoundary, "grid leaves the profile");
    acc -= Quad::integrate(integrand, t, x, 15, 1e-12);
    x = t;
    out[*it] = std::exp(acc);
  }
  return out;
}

std::vector<double> theta_grid(double eps, int points) {
  if (points < 1) return {};
  if (points == 1) return {0.5 * kPi};
  std::vector<double> grid(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) grid[i] = eps + (kPi - 2.0 * eps) * i / (points - 1);
  grid.back() = kPi - eps;
  return grid;
}

}  // namespace zgkn
