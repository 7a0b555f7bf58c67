#include <doctest.h>

#include <cmath>
#include <limits>
#include <numbers>

#include "zgkn/angular.hpp"
#include "support.hpp"
#include "zgkn/error.hpp"
#include "zgkn/odeflow.hpp"
#include "zgkn/radial.hpp"

using namespace zgkn;
using zgkn::test::code_of;

namespace {

constexpr double kPi = std::numbers::pi;

// A smooth, genuinely nonlinear angle field.
AngleField wavy() {
  return {[](double t, double y) { return 1.3 * std::sin(y) * std::cos(t) + 0.7 - 0.4 * std::cos(2.0 * y); }, -10, 10};
}

}  // namespace

TEST_SUITE("odeflow") {

TEST_CASE("zero field keeps the lift") {
  const AngleField f{[](double, double) { return 0.0; }, 0.0, 1.0};
  CHECK(integrate_lifted(f, 0.0, 1.0, 1.5, {}).final_lift() == doctest::Approx(1.5).epsilon(1e-15));
}

TEST_CASE("constant field is integrated exactly in both directions") {
  const double c = 3.7, T = 5.0;
  const AngleField f{[c](double, double) { return c; }, 0.0, 0.0};
  const auto fwd = integrate_lifted(f, 0.0, T, 0.0, {});
  CHECK(std::abs(fwd.final_lift() - c * T) <= 1e-10 * c * T);
  const auto back = integrate_lifted(f, T, 0.0, c * T, {});
  CHECK(std::abs(back.final_lift()) <= 1e-9);
  CHECK(back.t_start() == T);
  CHECK(back.initial_lift() == c * T);
}

TEST_CASE("a = 0 angular ground state lands on -pi") {
  const AngularContext ctx{0.0, 0.0, 1};
  const double eps = 1e-6, lambda = -1.0;
  const AngleField f{[&](double t, double y) { return theta_rhs(t, y, ctx, lambda); }, 0.0, kPi};
  const double y0 = 0.0 + 2.0 * lambda * eps / 2.0;
  const auto traj = integrate_lifted(f, eps, kPi - eps, y0, {1e-11, 1e-13});
  CHECK(std::abs(traj.final_lift() - (-kPi + eps)) < 1e-6);
}

TEST_CASE("nodes ascend and the lift never jumps by pi") {
  for (double dir : {1.0, -1.0}) {
    const auto traj = integrate_lifted(wavy(), 0.0, 8.0 * dir, 0.3, {});
    const auto nodes = traj.nodes();
    REQUIRE(nodes.size() > 2);
    for (std::size_t i = 1; i < nodes.size(); ++i) {
      CHECK(nodes[i].t > nodes[i - 1].t);
      CHECK(std::abs(nodes[i].lift - nodes[i - 1].lift) < kPi);
    }
  }
}

TEST_CASE("dense output reproduces the nodes and interpolates smoothly") {
  const AngleField f{[](double t, double) { return std::cos(t); }, 0.0, 0.0};
  const auto traj = integrate_lifted(f, 0.0, 6.0, 0.0, {1e-12, 1e-14});
  for (const auto& n : traj.nodes()) CHECK(traj(n.t) == doctest::Approx(n.lift).epsilon(1e-14));
  double worst = 0.0;
  for (int i = 0; i <= 600; ++i) worst = std::max(worst, std::abs(traj(0.01 * i) - std::sin(0.01 * i)));
  CHECK(worst < 1e-4);
}

TEST_CASE("shifted and stitched trajectories") {
  const auto left = integrate_lifted(wavy(), 0.0, 1.0, 0.0, {});
  const auto right = integrate_lifted(wavy(), 2.0, 1.0, 4.0, {});
  const auto moved = right.shifted(2.0 * kPi);
  CHECK(moved.final_lift() == doctest::Approx(right.final_lift() + 2.0 * kPi));
  const auto both = LiftedTrajectory::stitch(left, right);
  CHECK(both.t_min() == 0.0);
  CHECK(both.t_max() == 2.0);
  CHECK(both.nodes().size() == left.nodes().size() + right.nodes().size() - 1);
}

TEST_CASE("errors") {
  const AngleField nan_field{[](double, double) { return std::numeric_limits<double>::quiet_NaN(); }, 0.0, 0.0};
  CHECK(code_of([&] { integrate_lifted(nan_field, 0.0, 1.0, 0.0, {}); }) == ErrorCode::NonFiniteField);

  const AngleField blowup{[](double t, double) { return 1.0 / ((1.0 - t) * (1.0 - t)); }, 0.0, 0.0};
  CHECK(code_of([&] { integrate_lifted(blowup, 0.0, 2.0, 0.0, {}); }) == ErrorCode::StepSizeUnderflow);

  const AngleField narrow{[](double, double) { return 1.0; }, 0.0, 1.0};
  CHECK(code_of([&] { integrate_lifted(narrow, 0.0, 2.0, 0.0, {}); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([&] { integrate_lifted(narrow, 0.0, 1.0, 0.0, {-1.0, 1e-12}); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("lift_to_winding") {
  CHECK(lift_to_winding(-kPi, WindingConvention::theta()) == 0);
  CHECK(lift_to_winding(kPi, WindingConvention::theta()) == -1);
  CHECK(lift_to_winding(-3.0 * kPi + 0.2, WindingConvention::theta()) == 1);
  CHECK(lift_to_winding(kPi - 2.0 * std::acos(0.9), WindingConvention::omega(0.9)) == 0);
  CHECK(lift_to_winding(kPi - 2.0 * std::acos(0.9) - 4.0 * kPi, WindingConvention::omega(0.9)) == 2);
  CHECK(code_of([] { lift_to_winding(0.0, WindingConvention::theta()); }) == ErrorCode::NotNearTarget);
  CHECK(code_of([] { lift_to_winding(kPi - 2.0 * std::acos(0.9) + 0.5, WindingConvention::omega(0.9)); }) ==
        ErrorCode::NotNearTarget);
  for (int n = -3; n <= 3; ++n) {
    CHECK(lift_to_winding(WindingConvention::theta().target(n), WindingConvention::theta()) == n);
    CHECK(lift_to_winding(WindingConvention::omega(0.5).target(n), WindingConvention::omega(0.5)) == n);
  }
}

TEST_CASE("property: halving tolerances moves the final lift by < 10x the looser one") {
  const Tolerances loose{1e-8, 1e-10};
  const Tolerances tight{5e-9, 5e-11};
  for (double y0 : {-2.0, 0.0, 1.0, 3.0}) {
    const double a = integrate_lifted(wavy(), 0.0, 10.0, y0, loose).final_lift();
    const double b = integrate_lifted(wavy(), 0.0, 10.0, y0, tight).final_lift();
    CHECK(std::abs(a - b) < 10.0 * (loose.abs + loose.rel * std::abs(a)));
  }
}

TEST_CASE("property: there and back returns to the start") {
  const Tolerances tol{1e-10, 1e-12};
  for (double y0 : {-1.0, 0.5, 2.0}) {
    const double y1 = integrate_lifted(wavy(), 0.0, 3.0, y0, tol).final_lift();
    const double back = integrate_lifted(wavy(), 3.0, 0.0, y1, tol).final_lift();
    CHECK(std::abs(back - y0) <= 10.0 * tol.rel * std::abs(y0 - y1));
  }
}

TEST_CASE("property: shifting the start by 2 pi shifts the end by 2 pi") {
  for (double y0 : {-1.0, 0.5, 2.0}) {
    const double a = integrate_lifted(wavy(), 0.0, 10.0, y0, {}).final_lift();
    const double b = integrate_lifted(wavy(), 0.0, 10.0, y0 + 2.0 * kPi, {}).final_lift();
    CHECK(b - a == doctest::Approx(2.0 * kPi).epsilon(1e-9));
  }
}

TEST_CASE("property: the phase fields are 2 pi periodic") {
  const AngularContext actx{0.2, 0.7, -3};
  const RadialContext rctx{0.2, -0.3, 3, -1.7, 0.7};
  for (double t : {0.1, 0.9, 2.3, 3.0}) {
    for (double y : {-4.0, -0.5, 1.0, 6.0}) {
      CHECK(theta_rhs(t, y + 2.0 * kPi, actx, 1.3) == doctest::Approx(theta_rhs(t, y, actx, 1.3)).epsilon(1e-13));
      const double r = 10.0 * (t - 1.5);
      CHECK(omega_rhs(r, y + 2.0 * kPi, rctx) == doctest::Approx(omega_rhs(r, y, rctx)).epsilon(1e-13));
    }
  }
}

}  // TEST_SUITE
