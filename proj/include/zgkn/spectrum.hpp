#pragma once

// Coupled (E, lambda) eigenvalue problem: for each trial energy the angular
// eigenvalue lambda(E) with the requested N_theta is found first, then the
// radial connector miss for N_omega is driven to zero in E.

#include <array>
#include <complex>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "zgkn/angular.hpp"
#include "zgkn/index.hpp"
#include "zgkn/labels.hpp"
#include "zgkn/radial.hpp"

namespace zgkn {

/// 1 - 1/sqrt(2)
inline constexpr double kRingRadiusMax = 0.29289321881345248;
inline constexpr double kCouplingMin = -0.5;

struct ModelParams {
  double a = 0.1;
  double gamma = -0.3;

  /// Inside the window where existence is guaranteed: 0 < a < a_max, -1/2 < gamma < 0.
  bool in_window() const noexcept;
};

struct SpectrumOptions {
  AngularOptions angular;
  RadialOptions radial;
  double energy_tol = 1e-12;
  // Scan grid: log-spaced in 1 - E from gap_max down to gap_min.
  double gap_min = 1e-6;
  double gap_max = 0.5;
  int scan_points = 64;
  double cutoff_scale = 1.0;  // multiplies default_cutoff(E)
  double lambda_step = 0.02;  // bracket step for warm-started lambda solves
  bool check_tail = true;     // re-solve the root with the cutoff doubled
  double tail_energy_tol = 1e-9;
  double miss_tol = 1e-6;     // |coupled miss| allowed at a root; guards against jumps
  unsigned threads = 0;       // 0: ZGKN_THREADS or hardware concurrency
};

struct BoundState {
  double E = 0.0;
  double lambda = 0.0;
  StateIndex index;
  AngularSolution angular;
  RadialShot radial;
  double E_residual = 0.0;     // width of the final energy bracket
  double miss_residual = 0.0;  // |coupled miss| at E, radians
  double E_tail = 0.0;         // |E(2 r0) - E(r0)|; 0 unless checked
  std::optional<SpectroLabel> label;
  bool in_window = false;
};

/// Delta Omega(E, lambda(E)) minus its target for index.n_omega.
/// Decreasing in E between connectors.
double coupled_miss(const ModelParams& params, const StateIndex& index, double E,
                    const SpectrumOptions& opts = {});

/// Every root of the coupled miss found by the scan, ascending in E.
std::vector<BoundState> find_bound_states(const ModelParams& params, const StateIndex& index,
                                          const SpectrumOptions& opts = {});

/// Throws SolverError(NoRootInGap) when the scan sees no sign change and
/// MultipleRootsError when it sees more than one.
BoundState solve_bound_state(const ModelParams& params, const StateIndex& index,
                             const SpectrumOptions& opts = {});

/// Windings read off the stored profiles' end points: (N_theta, N_omega).
std::pair<int, int> profile_windings(const BoundState& state);

struct ExistenceCell {
  StateIndex index;
  bool predicted = false;
  bool found = false;
  int roots = 0;
  std::optional<double> E;
  std::string note;  // error text for numerical failures

  bool failed() const noexcept { return !note.empty(); }
  bool matches() const noexcept { return !failed() && predicted == found; }
};

struct ExistenceReport {
  ModelParams params;
  std::vector<ExistenceCell> cells;  // n_theta major, n_omega minor

  bool all_match() const noexcept;
};

/// Never throws for individual cells; failures are recorded in the cell.
ExistenceReport existence_scan(const ModelParams& params, int two_kappa, std::span<const int> n_thetas,
                               std::span<const int> n_omegas, const SpectrumOptions& opts = {});

enum class SplittingKind { Identical, MagneticJ, LambLike, Other };

std::string_view to_string(SplittingKind kind) noexcept;

struct SplittingRow {
  StateIndex first;
  StateIndex second;
  double E_first = 0.0;
  double E_second = 0.0;
  double delta = 0.0;  // E_first - E_second
  SplittingKind kind = SplittingKind::Other;
};

/// MagneticJ: same windings, opposite kappa. LambLike: same n and j with
/// opposite sign of k. Each distinct index is solved once.
std::vector<SplittingRow> splitting_report(const ModelParams& params,
                                           std::span<const std::pair<StateIndex, StateIndex>> pairs,
                                           const SpectrumOptions& opts = {});

/// Four components on an (r, theta) grid, stored r-major:
///   psi[c][i * theta.size() + j].
/// The factor exp(-i (E t - kappa phi)) is left out and named in `phase`.
struct Bispinor {
  std::vector<double> r;
  std::vector<double> theta;
  std::array<std::vector<std::complex<double>>, 4> psi;
  std::string phase = "exp(-i(E t - kappa phi))";
};

/// R S (cos(Theta/2) e^{-i Omega/2}, sin(Theta/2) e^{i Omega/2},
///      cos(Theta/2) e^{i Omega/2},  sin(Theta/2) e^{-i Omega/2}).
Bispinor assemble_bispinor(const BoundState& state, const ModelParams& params, std::span<const double> r,
                           std::span<const double> theta);

}  // namespace zgkn
