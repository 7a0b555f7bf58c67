#include <doctest.h>

#include <cmath>
#include <numbers>

#include "zgkn/angular.hpp"
#include "support.hpp"
#include "zgkn/error.hpp"
#include "zgkn/hydrogen.hpp"
#include "zgkn/radial.hpp"

using namespace zgkn;
using zgkn::test::code_of;

namespace {

constexpr double kPi = std::numbers::pi;

// The 1s1/2 (kappa = +1/2) state at a = 0.1, gamma = -0.3, solved once.
struct Ground {
  RadialContext ctx;
  RadialShot shot;
};

Ground ground() {
  static const Ground g = [] {
    const double E = 0.954800489496900;
    const AngularSolution ang = solve_lambda({0.1, E, 1}, 0);
    Ground out{{0.1, -0.3, 1, ang.lambda, E}, {}};
    out.shot = shoot_omega(out.ctx, default_cutoff(E));
    return out;
  }();
  return g;
}

}  // namespace

TEST_SUITE("radial") {

TEST_CASE("omega_rhs") {
  CHECK(omega_rhs(0.0, kPi / 2, {1.0, -0.3, 1, 0.0, 0.5}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(omega_rhs(0.0, 0.0, {1.0, -0.3, 1, 1.0, 0.5}) == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(omega_rhs(1.0, 0.0, {1.0, -0.3, 1, 1.0, 0.5}) == doctest::Approx(std::sqrt(2.0) + 0.2 - 1.0).epsilon(1e-14));
  CHECK(std::sqrt(2.0) + 0.2 - 1.0 == doctest::Approx(0.61421).epsilon(1e-5));
}

TEST_CASE("tail start and end values") {
  const RadialContext ctx{0.5, -0.3, 1, -1.0, 0.6};
  // Leading terms.
  CHECK(std::abs(omega_start_lift(ctx, 1e4) - (-kPi + std::acos(0.6) - (-1.0 - 0.375) / 1e4)) < 1e-7);
  CHECK(std::abs(omega_end_lift(ctx, 1e4) - (-std::acos(0.6) + (-1.0 + 0.375) / 1e4)) < 1e-7);
  CHECK(default_cutoff(0.6) == 200.0);
  CHECK(default_cutoff(0.9999) == doctest::Approx(40.0 / std::sqrt(1 - 0.9999 * 0.9999)));
}

TEST_CASE("tail expansion solves the phase equation to O(r^-4)") {
  for (const RadialContext ctx : {RadialContext{0.5, -0.3, 1, -1.0, 0.6}, RadialContext{0.1, -0.45, -3, 2.2, 0.95}}) {
    const auto residual = [&](double x) {
      // x is the signed position; the tail value there comes from whichever end it belongs to.
      const auto f = [&](double y) { return y > 0 ? omega_end_lift(ctx, y) : omega_start_lift(ctx, -y); };
      const double h = 1e-3 * std::abs(x);
      return std::abs((f(x + h) - f(x - h)) / (2 * h) - omega_rhs(x, f(x), ctx));
    };
    for (double x : {100.0, -100.0}) {
      CAPTURE(x);
      CHECK(residual(x) < 1e-4);
      CHECK(residual(x) / residual(2 * x) > 10.0);
    }
  }
}

TEST_CASE("shoot_omega rejects bad input") {
  const RadialContext ok{0.1, -0.3, 1, -0.9, 0.9};
  for (double E : {1.0, 1.2, 0.0, -0.5}) {
    RadialContext c = ok;
    c.E = E;
    CHECK(code_of([&] { shoot_omega(c, 500.0); }) == ErrorCode::InvalidArgument);
  }
  CHECK(code_of([&] { shoot_omega(ok, 5.0); }) == ErrorCode::InvalidArgument);
  RadialContext flat = ok;
  flat.a = 0.0;
  CHECK(code_of([&] { shoot_omega(flat, 500.0); }) == ErrorCode::InvalidArgument);
  RadialOptions far;
  far.r_match = 600.0;
  CHECK(code_of([&] { shoot_omega(ok, 500.0, far); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("connector at a solved bound state") {
  const Ground g = ground();
  const double target = kPi - 2.0 * std::acos(g.ctx.E);
  CHECK(std::abs(g.shot.delta_lift - target) < 1e-6);
  REQUIRE(g.shot.winding.has_value());
  CHECK(*g.shot.winding == 0);
  const auto nodes = g.shot.profile.nodes();
  CHECK(nodes.front().lift == doctest::Approx(omega_start_lift(g.ctx, g.shot.cutoff)));
  CHECK(nodes.back().lift == doctest::Approx(omega_end_lift(g.ctx, g.shot.cutoff)).epsilon(1e-6));
}

TEST_CASE("radial amplitude") {
  const Ground g = ground();
  const std::vector<double> rs = uniform_grid(-60.0, 60.0, 121);
  const RadialAmplitude amp = radial_amplitude(g.ctx, g.shot, rs);
  CHECK(amp.R[60] == 1.0);
  for (std::size_t i = 0; i < rs.size(); ++i) {
    CHECK(amp.u[i] * amp.u[i] + amp.v[i] * amp.v[i] == doctest::Approx(2.0 * amp.R[i] * amp.R[i]).epsilon(1e-12));
  }
  CHECK(std::abs(amp.slope_right + amp.eta) < 0.1 * amp.eta);
  CHECK(std::abs(amp.slope_left + amp.eta) < 0.1 * amp.eta);
  CHECK(amp.R.front() < 1e-3);
  CHECK(amp.R.back() < 1e-3);
  CHECK(code_of([&] {
          const std::vector<double> outside{-2.0 * g.shot.cutoff};
          radial_amplitude(g.ctx, g.shot, outside);
        }) == ErrorCode::DomainBoundary);
}

TEST_CASE("radial amplitude refuses a non-connector") {
  RadialContext off = ground().ctx;
  off.E -= 0.01;
  const RadialShot shot = shoot_omega(off, default_cutoff(off.E));
  const std::vector<double> rs{0.0};
  CHECK(code_of([&] { radial_amplitude(off, shot, rs); }) == ErrorCode::NonDecayingTail);
}

TEST_CASE("property: miss decreases in E at fixed lambda") {
  for (const RadialContext base : {RadialContext{0.1, -0.3, 1, -0.9, 0.5}, RadialContext{0.25, -0.45, -3, 2.1, 0.5}}) {
    double prev = 1e300;
    for (double E = 0.3; E < 0.999; E += 0.023) {
      RadialContext c = base;
      c.E = E;
      const RadialShot s = shoot_omega(c, default_cutoff(E));
      CHECK(s.mismatch < prev);
      CHECK(s.delta_lift - WindingConvention::omega(E).target(0) == doctest::Approx(s.mismatch));
      prev = s.mismatch;
    }
  }
}

TEST_CASE("property: cutoff doubling converges") {
  const RadialContext c{0.1, -0.3, 1, -0.9, 0.6};
  RadialOptions tight;
  tight.ode = {1e-13, 1e-15};
  // The start and end lifts carry the 1/r0 correction, so the remaining
  // cutoff error is already at round-off for r0 = 20.
  double prev = shoot_omega(c, 20.0, tight).delta_lift;
  for (double r0 : {40.0, 80.0, 160.0, 320.0}) {
    const double cur = shoot_omega(c, r0, tight).delta_lift;
    CHECK(std::abs(cur - prev) < 1e-10);
    prev = cur;
  }
  RadialOptions checked;
  checked.check_tail = true;
  const RadialShot s = shoot_omega(c, default_cutoff(0.6), checked);
  CHECK(s.tail_residual < 100.0 * checked.tail_tol);
}

TEST_CASE("half-line a = 0: Sommerfeld energies and Gordon profiles, n <= 2") {
  const double g = -0.2;
  for (int n = 1; n <= 2; ++n) {
    for (int k = -n; k < n; ++k) {
      if (k == 0) continue;
      const HydrogenState s{n - std::abs(k), k, g};
      const HalfLineSolution sol = solve_halfline_energy(k, g, s.M);
      CHECK(std::abs(sol.E / sommerfeld_energy(s) - 1.0) < 1e-8);
      const GordonOmegaProfile exact(s);
      const double eta = std::sqrt(1 - sol.E * sol.E);
      double worst = 0.0;
      for (int i = 0; i <= 400; ++i) {
        const double r = 1e-3 * std::pow(20.0 / eta / 1e-3, i / 400.0);
        worst = std::max(worst, std::abs(sol.shot.profile(r) - exact(r)));
      }
      CHECK(worst < 1e-6);
    }
  }
  CHECK(halfline_origin_lift(-1, -0.2) == doctest::Approx(std::asin(-0.2)));
  CHECK(halfline_origin_lift(1, -0.2) == doctest::Approx(-kPi - std::asin(0.2)));
  CHECK(code_of([] { solve_halfline_energy(-1, -0.2, -1); }) == ErrorCode::InvalidArgument);
}

}  // TEST_SUITE
