#pragma once

#include <compare>

namespace zgkn {

/// Three integers labelling a bound state: the Theta- and Omega-connector
/// windings and 2*kappa (kappa is a half-integer, stored doubled).
struct StateIndex {
  int n_theta = 0;
  int n_omega = 0;
  int two_kappa = 1;

  double kappa() const noexcept { return 0.5 * two_kappa; }
  auto operator<=>(const StateIndex&) const = default;
};

/// Existence predicate for 0 < a < 1 - 1/sqrt(2), -1/2 < gamma < 0:
/// N_theta >= 0 needs N_omega >= 0, N_theta <= -1 needs N_omega >= 1.
constexpr bool admissible(const StateIndex& idx) noexcept {
  return (idx.n_theta >= 0 && idx.n_omega >= 0) || (idx.n_theta <= -1 && idx.n_omega >= 1);
}

constexpr bool is_odd(int two_kappa) noexcept { return two_kappa % 2 != 0; }

}  // namespace zgkn
