#include "zgkn/labels.hpp"

#include <cctype>
#include <charconv>
#include <cstdlib>
#include <string>

#include "zgkn/error.hpp"

namespace zgkn {

namespace {

constexpr std::string_view kLetters = "spdfghiklmnoqrtuv";

int sgn(int x) { return (x > 0) - (x < 0); }

[[noreturn]] void bad_label(std::string_view text, std::string_view why) {
  throw SolverError(ErrorCode::InvalidLabel, std::string(text) + ": " + std::string(why));
}

}  // namespace

char orbital_letter(int l) {
  if (l < 0 || l >= static_cast<int>(kLetters.size())) {
    throw SolverError(ErrorCode::InvalidLabel, "no letter for l = " + std::to_string(l));
  }
  return kLetters[static_cast<std::size_t>(l)];
}

int SpectroLabel::k() const noexcept {
  const int abs_k = (two_j + 1) / 2;
  return 2 * l < two_j ? -abs_k : abs_k;
}

void validate(const SpectroLabel& label) {
  if (label.n < 1) throw SolverError(ErrorCode::InvalidLabel, "n must be >= 1");
  if (label.l < 0 || label.l > label.n - 1) throw SolverError(ErrorCode::InvalidLabel, "need 0 <= l <= n-1");
  if (label.two_j <= 0 || label.two_j % 2 == 0) throw SolverError(ErrorCode::InvalidLabel, "j must be half-odd");
  if (std::abs(label.two_j - 2 * label.l) != 1) throw SolverError(ErrorCode::InvalidLabel, "j must be l +- 1/2");
  if (label.two_mj % 2 == 0 || std::abs(label.two_mj) > label.two_j) {
    throw SolverError(ErrorCode::InvalidLabel, "m_j must be half-odd with |m_j| <= j");
  }
}

SpectroLabel winding_to_label(const StateIndex& idx) {
  if (!is_odd(idx.two_kappa)) throw SolverError(ErrorCode::InvalidIndex, "2*kappa must be odd");
  if (idx.n_omega < 0) throw SolverError(ErrorCode::InvalidIndex, "N_omega must be >= 0");
  const int big_n = idx.n_theta >= 0 ? idx.n_theta + 1 : idx.n_theta;
  const int big_m = idx.n_omega;
  // k = -N - sgn(N)(|kappa| - 1/2), with |kappa| - 1/2 = (|2 kappa| - 1)/2.
  const int k = -big_n - sgn(big_n) * (std::abs(idx.two_kappa) - 1) / 2;
  SpectroLabel label;
  label.n = big_m + std::abs(k);
  label.two_j = 2 * std::abs(k) - 1;
  label.l = (label.two_j + sgn(k)) / 2;
  label.two_mj = idx.two_kappa;
  if (label.l > label.n - 1) {
    throw SolverError(ErrorCode::InvalidIndex, "index maps to l > n-1 (k > 0 with N_omega = 0)");
  }
  return label;
}

StateIndex label_to_winding(const SpectroLabel& label) {
  validate(label);
  const int k = label.k();
  const int abs_kappa2 = std::abs(label.two_mj);
  // N = -sgn(k)(|k| - |kappa| + 1/2)
  const int big_n = -sgn(k) * (2 * std::abs(k) - abs_kappa2 + 1) / 2;
  StateIndex idx;
  idx.n_theta = big_n >= 1 ? big_n - 1 : big_n;
  idx.n_omega = label.n - std::abs(k);
  idx.two_kappa = label.two_mj;
  return idx;
}

std::string format_term(const SpectroLabel& label) {
  return std::to_string(label.n) + orbital_letter(label.l) + std::to_string(label.two_j) + "/2";
}

std::string format_label(const SpectroLabel& label) {
  return format_term(label) + " (mj=" + std::to_string(label.two_mj) + "/2)";
}

SpectroLabel parse_label(std::string_view text) {
  const char* p = text.data();
  const char* end = text.data() + text.size();
  auto read_int = [&](int& out) {
    auto [ptr, ec] = std::from_chars(p, end, out);
    if (ec != std::errc()) bad_label(text, "expected integer");
    p = ptr;
  };
  SpectroLabel label;
  read_int(label.n);
  if (p == end) bad_label(text, "missing orbital letter");
  const auto pos = kLetters.find(static_cast<char>(std::tolower(static_cast<unsigned char>(*p))));
  if (pos == std::string_view::npos) bad_label(text, "unknown orbital letter");
  label.l = static_cast<int>(pos);
  ++p;
  read_int(label.two_j);
  if (end - p < 2 || p[0] != '/' || p[1] != '2') bad_label(text, "expected '/2'");
  p += 2;
  label.two_mj = label.two_j;
  while (p != end && *p == ' ') ++p;
  if (p != end) {
    constexpr std::string_view open = "(mj=";
    if (std::string_view(p, static_cast<std::size_t>(end - p)).substr(0, open.size()) != open) {
      bad_label(text, "expected '(mj=...)'");
    }
    p += open.size();
    if (p != end && *p == '+') ++p;
    read_int(label.two_mj);
    if (end - p != 3 || std::string_view(p, 3) != "/2)") bad_label(text, "expected '/2)'");
  }
  validate(label);
  return label;
}

std::vector<SpectroLabel> labels_up_to(int nmax) {
  std::vector<SpectroLabel> out;
  for (int n = 1; n <= nmax; ++n) {
    for (int l = 0; l < n; ++l) {
      for (int two_j : {2 * l - 1, 2 * l + 1}) {
        if (two_j < 1) continue;
        for (int two_mj = -two_j; two_mj <= two_j; two_mj += 2) out.push_back({n, l, two_j, two_mj});
      }
    }
  }
  return out;
}

}  // namespace zgkn
