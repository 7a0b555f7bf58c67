#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "zgkn/index.hpp"

namespace zgkn {

/// Hydrogenic label n l_j with magnetic number m_j; j and m_j stored doubled.
struct SpectroLabel {
  int n = 1;
  int l = 0;
  int two_j = 1;
  int two_mj = 1;

  /// Spin-orbit quantum number k: -(j + 1/2) when l = j - 1/2, +(j + 1/2) otherwise.
  int k() const noexcept;
  bool operator==(const SpectroLabel&) const = default;
};

/// Throws SolverError(InvalidLabel) unless n >= 1, l <= n-1, j = l +- 1/2,
/// |m_j| <= j with j and m_j half-odd.
void validate(const SpectroLabel& label);

/// Throws SolverError(InvalidIndex) for even 2*kappa or when the label would
/// need l > n - 1 (k > 0 with N_omega = 0).
SpectroLabel winding_to_label(const StateIndex& index);
StateIndex label_to_winding(const SpectroLabel& label);

/// "1s1/2", "2p3/2", ...
std::string format_term(const SpectroLabel& label);
/// "2p1/2 (mj=-1/2)"
std::string format_label(const SpectroLabel& label);

/// Accepts either form above; a bare term gets m_j = +j.
SpectroLabel parse_label(std::string_view text);

char orbital_letter(int l);

/// Every valid label with n <= nmax, ordered by n, l, j, then m_j.
std::vector<SpectroLabel> labels_up_to(int nmax);

}  // namespace zgkn
