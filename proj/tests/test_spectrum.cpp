#include <doctest.h>

#include <array>
#include <cmath>
#include <numbers>

#include "support.hpp"
#include "zgkn/spectrum.hpp"

using namespace zgkn;
using zgkn::test::code_of;

namespace {

constexpr double kPi = std::numbers::pi;
const ModelParams kDefault{0.1, -0.3};

const BoundState& ground() {
  static const BoundState s = solve_bound_state(kDefault, {0, 0, 1});
  return s;
}

}  // namespace

TEST_SUITE("spectrum") {

TEST_CASE("theorem window") {
  CHECK(ModelParams{0.1, -0.3}.in_window());
  CHECK_FALSE(ModelParams{0.3, -0.3}.in_window());
  CHECK_FALSE(ModelParams{0.1, -0.5}.in_window());
  CHECK_FALSE(ModelParams{0.1, 0.0}.in_window());
  CHECK(kRingRadiusMax == doctest::Approx(1.0 - 1.0 / std::sqrt(2.0)).epsilon(1e-16));
}

TEST_CASE("coupled miss has one sign change for the ground class") {
  int changes = 0;
  double prev = coupled_miss(kDefault, {0, 0, 1}, 0.9);
  for (int i = 1; i < 200; ++i) {
    const double E = 0.9 + (0.99999 - 0.9) * i / 199.0;
    const double cur = coupled_miss(kDefault, {0, 0, 1}, E);
    if ((prev > 0) != (cur > 0)) ++changes;
    prev = cur;
  }
  CHECK(changes == 1);
  // N_omega = -1 shifts the miss by -2 pi: no sign change left.
  for (double E : {0.5, 0.9, 0.99, 0.99999}) CHECK(coupled_miss(kDefault, {0, -1, 1}, E) < 0.0);
}

TEST_CASE("argument checks") {
  CHECK(code_of([] { coupled_miss({0.0, -0.3}, {0, 0, 1}, 0.9); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { coupled_miss({0.1, 0.1}, {0, 0, 1}, 0.9); }) == ErrorCode::InvalidArgument);
  CHECK(code_of([] { coupled_miss(kDefault, {0, 0, 2}, 0.9); }) == ErrorCode::InvalidArgument);
  SpectrumOptions bad;
  bad.scan_points = 1;
  CHECK(code_of([&] { find_bound_states(kDefault, {0, 0, 1}, bad); }) == ErrorCode::InvalidArgument);
}

TEST_CASE("ground state") {
  const BoundState& s = ground();
  CHECK(s.E == doctest::Approx(0.954800489).epsilon(1e-8));
  CHECK(s.E > 0.0);
  CHECK(s.E < 1.0);
  CHECK(s.E_residual <= 1e-12);
  CHECK(s.E_tail <= 1e-9);
  CHECK(s.miss_residual < 1e-6);
  CHECK(s.in_window);
  REQUIRE(s.label.has_value());
  CHECK(format_term(*s.label) == "1s1/2");
  CHECK(profile_windings(s) == std::pair{0, 0});
  CHECK(std::abs(s.angular.residual) < 1e-8);
}

TEST_CASE("kappa breaks the 1s degeneracy") {
  const BoundState minus = solve_bound_state(kDefault, {0, 0, -1});
  CHECK(minus.E == doctest::Approx(0.953503884).epsilon(1e-8));
  CHECK(std::abs(ground().E - minus.E) > 1e-6);
}

TEST_CASE("no state where the index is not admissible") {
  CHECK(code_of([] { solve_bound_state(kDefault, {-1, 0, -1}); }) == ErrorCode::NoRootInGap);
  CHECK(code_of([] { solve_bound_state(kDefault, {0, -1, 1}); }) == ErrorCode::NoRootInGap);
}

TEST_CASE("existence scan") {
  const std::array<int, 3> nts{-1, 0, 1};
  const std::array<int, 3> nos{-1, 0, 1};
  const ExistenceReport rep = existence_scan(kDefault, 1, nts, nos);
  REQUIRE(rep.cells.size() == 9);
  CHECK(rep.all_match());
  CHECK(rep.cells[0].index == StateIndex{-1, -1, 1});
  CHECK(rep.cells[4].index == StateIndex{0, 0, 1});
  CHECK(rep.cells[4].found);
  CHECK(rep.cells[4].roots == 1);
  CHECK(*rep.cells[4].E == doctest::Approx(ground().E).epsilon(1e-12));
  CHECK(rep.cells[5].found);     // (0, 1): 2s1/2
  CHECK_FALSE(rep.cells[1].found);  // (-1, 0)
  CHECK(rep.cells[2].found);     // (-1, 1): 2p1/2

  const std::array<int, 0> none{};
  CHECK(existence_scan(kDefault, 1, none, nos).cells.empty());
  CHECK(existence_scan(kDefault, 1, nts, none).cells.empty());

  const ExistenceReport broken = existence_scan({0.1, 0.2}, 1, nts, nos);
  CHECK_FALSE(broken.all_match());
  for (const auto& c : broken.cells) CHECK(c.failed());
}

TEST_CASE("splitting report") {
  const ModelParams p{0.05, -0.3};
  const std::array<std::pair<StateIndex, StateIndex>, 3> pairs{{
      {{0, 0, 1}, {0, 0, -1}},
      {{0, 0, 1}, {0, 0, 1}},
      {{0, 1, 1}, {-1, 1, 1}},
  }};
  const auto rows = splitting_report(p, pairs);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].kind == SplittingKind::MagneticJ);
  CHECK(std::abs(rows[0].delta) > 1e-7);
  CHECK(rows[0].delta == rows[0].E_first - rows[0].E_second);
  CHECK(rows[1].kind == SplittingKind::Identical);
  CHECK(rows[1].delta == 0.0);
  CHECK(rows[2].kind == SplittingKind::LambLike);
  CHECK(std::abs(rows[2].delta) > 0.0);
  CHECK(to_string(SplittingKind::LambLike) == "lamb");
  CHECK(rows[0].E_first == doctest::Approx(solve_bound_state(p, {0, 0, 1}).E).epsilon(1e-13));
}

TEST_CASE("bispinor") {
  const BoundState& s = ground();
  const std::vector<double> r = uniform_grid(-20.0, 20.0, 9);
  const std::vector<double> th = theta_grid(1e-3, 7);
  const Bispinor b = assemble_bispinor(s, kDefault, r, th);
  CHECK(b.r == r);
  CHECK(b.theta == th);
  CHECK(b.phase == "exp(-i(E t - kappa phi))");
  const RadialAmplitude R = radial_amplitude({0.1, -0.3, 1, s.lambda, s.E}, s.radial, r);
  const std::vector<double> S = angular_amplitude({0.1, s.E, 1}, s.angular, th);
  for (std::size_t i = 0; i < r.size(); ++i) {
    for (std::size_t j = 0; j < th.size(); ++j) {
      const std::size_t k = i * th.size() + j;
      CHECK(b.psi[2][k] == std::conj(b.psi[0][k]));
      CHECK(b.psi[3][k] == std::conj(b.psi[1][k]));
      const double dens = std::norm(b.psi[0][k]) + std::norm(b.psi[1][k]) + std::norm(b.psi[2][k]) +
                          std::norm(b.psi[3][k]);
      CHECK(dens == doctest::Approx(2.0 * R.R[i] * R.R[i] * S[j] * S[j]).epsilon(1e-12));
    }
  }
  const std::size_t centre = 4 * th.size() + 3;  // r = 0, theta = pi/2
  CHECK(std::norm(b.psi[0][centre]) + std::norm(b.psi[1][centre]) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("property: results do not depend on the thread count") {
  SpectrumOptions one;
  one.threads = 1;
  SpectrumOptions many;
  many.threads = 4;
  const auto a = find_bound_states(kDefault, {0, 1, -1}, one);
  const auto b = find_bound_states(kDefault, {0, 1, -1}, many);
  REQUIRE(a.size() == 1);
  REQUIRE(b.size() == 1);
  CHECK(a[0].E == b[0].E);
  CHECK(a[0].lambda == b[0].lambda);
}

TEST_CASE("property: energies rise with N_omega and stay in the gap") {
  for (int tk : {1, -1}) {
    double prev = 0.0;
    for (int no = 0; no <= 3; ++no) {
      const BoundState s = solve_bound_state(kDefault, {0, no, tk});
      CHECK(s.E > prev);
      CHECK(s.E < 1.0);
      CHECK(profile_windings(s) == std::pair{0, no});
      prev = s.E;
    }
  }
}

TEST_CASE("property: windings recomputed from the profiles match the index") {
  for (const StateIndex idx :
       {StateIndex{-1, 1, 1}, StateIndex{-1, 2, -1}, StateIndex{1, 0, 1}, StateIndex{1, 1, -3}}) {
    CAPTURE(idx.n_theta);
    CAPTURE(idx.n_omega);
    CAPTURE(idx.two_kappa);
    const BoundState s = solve_bound_state(kDefault, idx);
    CHECK(profile_windings(s) == std::pair{idx.n_theta, idx.n_omega});
    CHECK(lift_to_winding(s.angular.profile.final_lift() - s.angular.profile.initial_lift(),
                          WindingConvention::theta()) == s.angular.winding);
    REQUIRE(s.radial.winding.has_value());
    CHECK(*s.radial.winding == idx.n_omega);
  }
}

TEST_CASE("property: eigenpair is a connector for both equations") {
  const BoundState& s = ground();
  const ThetaShot th = shoot_theta({0.1, s.E, 1}, s.lambda);
  CHECK(std::abs(th.delta_lift + kPi) < 1e-7);
  const RadialShot om = shoot_omega({0.1, -0.3, 1, s.lambda, s.E}, default_cutoff(s.E));
  CHECK(std::abs(om.delta_lift - (kPi - 2.0 * std::acos(s.E))) < 1e-6);
}

}  // TEST_SUITE
