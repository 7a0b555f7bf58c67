#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zgkn/angular.hpp"
#include "support.hpp"
#include "zgkn/error.hpp"

using namespace zgkn;
using zgkn::test::code_of;

namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

TEST_SUITE("angular") {

TEST_CASE("theta_rhs") {
  CHECK(theta_rhs(1.1, 0.0, {0.0, 0.0, 1}, 0.0) == 0.0);
  CHECK(theta_rhs(kPi / 2, kPi / 2, {0.0, 0.0, 1}, 1.0) == doctest::Approx(1.0));
  const double s = std::sqrt(0.5);
  const double want = 2.0 * (0.9 * 0.1 * s - 0.5 / s) + 2.0;
  CHECK(theta_rhs(kPi / 4, kPi / 2, {0.1, 0.9, 1}, 1.0) == doctest::Approx(want).epsilon(1e-14));
  CHECK(want == doctest::Approx(0.71308).epsilon(1e-4));
  CHECK(code_of([] { theta_rhs(0.0, 0.0, {0.0, 0.0, 1}, 0.0); }) == ErrorCode::DomainBoundary);
  CHECK(code_of([] { theta_rhs(kPi, 0.0, {0.0, 0.0, 1}, 0.0); }) == ErrorCode::DomainBoundary);
}

TEST_CASE("shoot_theta at a = 0") {
  CHECK(shoot_theta({0.0, 0.0, 1}, -1.0).delta_lift == doctest::Approx(-kPi).epsilon(1e-7));
  const double between = shoot_theta({0.0, 0.0, 1}, 0.0).delta_lift;
  CHECK(between > -kPi);
  CHECK(between < kPi);
  // For kappa < 0 the start lift is pi; lambda = -1 is the N_theta = 0 connector
  // and lambda = +1 the N_theta = -1 one.
  CHECK(shoot_theta({0.0, 0.0, -1}, -1.0).delta_lift == doctest::Approx(-kPi).epsilon(1e-7));
  CHECK(shoot_theta({0.0, 0.0, -1}, 1.0).delta_lift == doctest::Approx(kPi).epsilon(1e-7));
  const AngularOptions bad{.eps = 1e-2};
  CHECK(code_of([&] { shoot_theta({0.0, 0.0, 1}, 0.0, bad); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { shoot_theta({0.0, 0.0, 2}, 0.0); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("solve_lambda at a = 0") {
  CHECK(std::abs(solve_lambda({0.0, 0.0, 1}, 0).lambda + 1.0) < 1e-8);
  CHECK(std::abs(solve_lambda({0.0, 0.0, 3}, 1).lambda + 3.0) < 1e-8);
  CHECK(std::abs(solve_lambda({0.0, 0.0, 1}, -1).lambda - 1.0) < 1e-8);
  const AngularSolution sol = solve_lambda({0.0, 0.0, 5}, 2);
  CHECK(sol.winding == 2);
  CHECK(sol.residual < 1e-8);
  CHECK(lift_to_winding(sol.profile.final_lift() - sol.profile.initial_lift(), WindingConvention::theta()) == 2);
}

TEST_CASE("solve_lambda seeds, widens and gives up") {
  BracketConfig far;
  far.seed = 12.0;
  CHECK(std::abs(solve_lambda({0.0, 0.0, 1}, 0, far).lambda + 1.0) < 1e-8);
  BracketConfig tiny;
  tiny.seed = 40.0;
  tiny.half_width = 0.1;
  tiny.step = 0.05;
  tiny.max_widenings = 0;
  CHECK(code_of([&] { solve_lambda({0.0, 0.0, 1}, 0, tiny); }) == ErrorCode::BracketNotFound);
}

TEST_CASE("exact_k") {
  CHECK(exact_k(1, 1) == -1);
  CHECK(exact_k(-2, 3) == 3);
  CHECK(exact_k(1, -1) == -1);
  CHECK(code_of([] { exact_k(0, 1); }) == ErrorCode::ZeroN);
  CHECK(big_n_from_winding(0) == 1);
  CHECK(big_n_from_winding(-1) == -1);
}

TEST_CASE("exact_theta_profile") {
  for (double t : {0.01, 0.7, 1.9, 3.1}) CHECK(exact_theta_profile(1, 1, t) == doctest::Approx(-t).epsilon(1e-14));
  CHECK(exact_theta_profile(1, 1, kPi - 1e-9) == doctest::Approx(-kPi));
  CHECK(exact_theta_profile(-1, 1, kPi / 2) == doctest::Approx(kPi / 2));
  CHECK(code_of([] { exact_theta_profile(1, 1, 0.0); }) == ErrorCode::DomainBoundary);
  // End value -2 pi sgn(N)(|N| - 1) plus the -pi of the start convention.
  for (int N : {-3, -2, 2, 3}) {
    const double end = exact_theta_profile(N, 1, kPi - 1e-9);
    const int sgn = N > 0 ? 1 : -1;
    CHECK(end == doctest::Approx(-2 * kPi * sgn * (std::abs(N) - 1) - sgn * kPi).epsilon(1e-7));
  }
}

TEST_CASE("angular_amplitude at a = 0, N = 1, kappa = 1/2 is sqrt(sin)") {
  const AngularContext ctx{0.0, 0.0, 1};
  const AngularSolution sol = solve_lambda(ctx, 0);
  const std::vector<double> ts = theta_grid(1e-6, 41);
  const std::vector<double> S = angular_amplitude(ctx, sol, ts);
  for (std::size_t i = 0; i < ts.size(); ++i) {
    CHECK(std::isfinite(S[i]));
    CHECK(S[i] == doctest::Approx(std::sqrt(std::sin(ts[i]))).epsilon(1e-7));
  }
  const double mid = kPi / 2;
  CHECK(angular_amplitude(ctx, sol, std::span(&mid, 1))[0] == 1.0);
}

TEST_CASE("angular_amplitude stays finite for a > 0") {
  const AngularContext ctx{0.2, 0.9, -3};
  const AngularSolution sol = solve_lambda(ctx, 1);
  for (double s : angular_amplitude(ctx, sol, theta_grid(1e-6, 101))) {
    CHECK(std::isfinite(s));
    CHECK(s >= 0.0);
    CHECK(s < 10.0);
  }
}

TEST_CASE("property: monotone shooting in lambda") {
  for (const AngularContext ctx :
       {AngularContext{0.0, 0.0, 1}, AngularContext{0.15, 0.9, -3}, AngularContext{0.25, 0.5, 5}}) {
    double prev_mis = -1e300, prev_sweep = -1e300;
    for (double lam = -6.0; lam <= 6.0; lam += 0.37) {
      const double mis = shoot_theta(ctx, lam).mismatch;
      const double sw = sweep_theta(ctx, lam);
      CHECK(mis > prev_mis);
      CHECK(sw > prev_sweep - 1e-6);
      prev_mis = mis;
      prev_sweep = sw;
    }
  }
}

TEST_CASE("property: halving eps moves lambda by < 1e-9") {
  for (int tk : {1, -1, 3}) {
    for (int nt : {-1, 0, 1}) {
      AngularOptions half;
      half.eps = 0.5e-6;
      const AngularContext ctx{0.1, 0.95, tk};
      CHECK(std::abs(solve_lambda(ctx, nt).lambda - solve_lambda(ctx, nt, {}, half).lambda) < 1e-9);
    }
  }
}

TEST_CASE("property: kappa reflection at a = 0") {
  for (int tk : {1, 3, 5}) {
    for (int nt : {-2, -1, 0, 1, 2}) {
      const AngularSolution plus = solve_lambda({0.0, 0.0, tk}, nt);
      const AngularSolution minus = solve_lambda({0.0, 0.0, -tk}, nt);
      CHECK(std::abs(plus.lambda - minus.lambda) < 1e-9);
      // Theta -> Theta + pi (mod 2 pi) maps one connector onto the other.
      for (double t : {0.3, 1.2, 2.5}) {
        const double d = minus.profile(t) - plus.profile(t) - kPi;
        CHECK(std::abs(std::remainder(d, 2 * kPi)) < 1e-6);
      }
    }
  }
}

}  // TEST_SUITE
