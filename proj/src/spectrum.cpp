#include "zgkn/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numbers>
#include <string>

#include <boost/math/tools/toms748_solve.hpp>

#include "zgkn/error.hpp"
#include "zgkn/parallel.hpp"

namespace zgkn {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kChunk = 8;  // grid points per warm-start chain

void check_params(const ModelParams& p, int two_kappa) {
  if (!(p.a > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "ring radius must be positive");
  if (!(p.gamma < 0.0)) throw SolverError(ErrorCode::InvalidArgument, "gamma must be negative");
  if (!is_odd(two_kappa)) throw SolverError(ErrorCode::InvalidArgument, "2*kappa must be odd");
}

// Radial mismatch for N_omega = 0 as a function of E; the miss for any other
// N_omega is this plus 2 pi N_omega. Remembers the last lambda as a seed.
class MissEvaluator {
 public:
  MissEvaluator(const ModelParams& p, int n_theta, int two_kappa, const SpectrumOptions& opts)
      : p_(p), n_theta_(n_theta), two_kappa_(two_kappa), opts_(opts) {}

  struct Sample {
    double base;
    double lambda;
  };

  Sample operator()(double E) {
    const AngularSolution ang = lambda_at(E);
    const RadialContext rc{p_.a, p_.gamma, two_kappa_, ang.lambda, E};
    RadialOptions ropts = opts_.radial;
    ropts.check_tail = false;
    const RadialShot shot = shoot_omega(rc, opts_.cutoff_scale * default_cutoff(E), ropts);
    return {shot.mismatch, ang.lambda};
  }

  AngularSolution lambda_at(double E) {
    BracketConfig bracket;
    bracket.seed = seed_;
    if (seed_) bracket.step = opts_.lambda_step;
    AngularSolution sol = solve_lambda({p_.a, E, two_kappa_}, n_theta_, bracket, opts_.angular);
    seed_ = sol.lambda;
    return sol;
  }

  void reseed(std::optional<double> s) { seed_ = s; }

 private:
  ModelParams p_;
  int n_theta_;
  int two_kappa_;
  SpectrumOptions opts_;
  std::optional<double> seed_;
};

struct Grid {
  std::vector<double> E;
  std::vector<double> base;
  std::vector<double> lambda;
};

std::vector<double> energy_grid(const SpectrumOptions& opts) {
  if (!(opts.gap_min > 0.0 && opts.gap_max < 1.0 && opts.gap_min < opts.gap_max) || opts.scan_points < 2) {
    throw SolverError(ErrorCode::InvalidArgument, "bad energy scan range");
  }
  std::vector<double> E(static_cast<std::size_t>(opts.scan_points));
  const double ratio = opts.gap_min / opts.gap_max;
  for (int i = 0; i < opts.scan_points; ++i) {
    E[i] = 1.0 - opts.gap_max * std::pow(ratio, static_cast<double>(i) / (opts.scan_points - 1));
  }
  return E;
}

Grid scan(const ModelParams& p, int n_theta, int two_kappa, const SpectrumOptions& opts) {
  Grid g;
  g.E = energy_grid(opts);
  g.base.resize(g.E.size());
  g.lambda.resize(g.E.size());
  const std::size_t chunks = (g.E.size() + kChunk - 1) / kChunk;
  parallel_for(chunks, opts.threads, [&](std::size_t c) {
    MissEvaluator eval(p, n_theta, two_kappa, opts);
    const std::size_t end = std::min(g.E.size(), (c + 1) * kChunk);
    for (std::size_t i = c * kChunk; i < end; ++i) {
      const auto s = eval(g.E[i]);
      g.base[i] = s.base;
      g.lambda[i] = s.lambda;
    }
  });
  return g;
}

std::vector<std::size_t> sign_changes(const Grid& g, int n_omega) {
  std::vector<std::size_t> out;
  const double shift = 2.0 * kPi * n_omega;
  for (std::size_t i = 1; i < g.E.size(); ++i) {
    if ((g.base[i - 1] + shift > 0.0) != (g.base[i] + shift > 0.0)) out.push_back(i);
  }
  return out;
}

// The lift itself is ill-conditioned at a root (the miss is steep there), so
// cutoff stability is judged on the root.
double root_with_doubled_cutoff(const ModelParams& p, const StateIndex& idx, double E, double lambda,
                                const SpectrumOptions& opts) {
  SpectrumOptions dbl = opts;
  dbl.cutoff_scale *= 2.0;
  MissEvaluator eval(p, idx.n_theta, idx.two_kappa, dbl);
  eval.reseed(lambda);
  const double shift = 2.0 * kPi * idx.n_omega;
  const auto f = [&](double x) { return eval(x).base + shift; };
  const double gap = 1.0 - E;
  for (double d = 1e-9 * gap; d < 0.5 * gap; d *= 10.0) {
    const double lo = E - d;
    const double hi = E + d;
    const double f_lo = f(lo);
    const double f_hi = f(hi);
    if (f_lo == 0.0) return lo;
    if (f_hi == 0.0) return hi;
    if ((f_lo > 0.0) == (f_hi > 0.0)) continue;
    std::uintmax_t max_iter = 200;
    const double tol = opts.energy_tol;
    const auto stop = [tol](double x, double y) { return std::abs(y - x) <= tol; };
    const auto [a, b] = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, stop, max_iter);
    return 0.5 * (a + b);
  }
  throw SolverError(ErrorCode::CutoffTooSmall, "root lost when doubling the cutoff");
}

BoundState build_state(const ModelParams& p, const StateIndex& idx, double E, double width, double seed,
                       const SpectrumOptions& opts) {
  MissEvaluator eval(p, idx.n_theta, idx.two_kappa, opts);
  eval.reseed(seed);
  BoundState st;
  st.E = E;
  st.E_residual = width;
  st.index = idx;
  st.angular = eval.lambda_at(E);
  st.lambda = st.angular.lambda;
  const RadialContext rc{p.a, p.gamma, idx.two_kappa, st.lambda, E};
  RadialOptions ropts = opts.radial;
  ropts.check_tail = false;
  st.radial = shoot_omega(rc, opts.cutoff_scale * default_cutoff(E), ropts);
  st.miss_residual = std::abs(st.radial.mismatch + 2.0 * kPi * idx.n_omega);
  st.in_window = p.in_window();
  if (!(st.miss_residual <= opts.miss_tol)) {
    throw SolverError(ErrorCode::NotNearTarget, "sign change at E = " + std::to_string(E) +
                                                    " is a jump of the miss, residual " +
                                                    std::to_string(st.miss_residual));
  }
  if (opts.check_tail) {
    st.E_tail = std::abs(root_with_doubled_cutoff(p, idx, E, st.lambda, opts) - E);
    if (st.E_tail > opts.tail_energy_tol) {
      throw SolverError(ErrorCode::CutoffTooSmall,
                        "doubling the cutoff moved E by " + std::to_string(st.E_tail));
    }
  }

  const auto [nt, no] = profile_windings(st);
  if (nt != idx.n_theta || no != idx.n_omega) {
    throw SolverError(ErrorCode::NotNearTarget, "profiles wind (" + std::to_string(nt) + ", " +
                                                    std::to_string(no) + "), wanted (" +
                                                    std::to_string(idx.n_theta) + ", " +
                                                    std::to_string(idx.n_omega) + ")");
  }
  try {
    st.label = winding_to_label(idx);
  } catch (const SolverError&) {
    st.label.reset();
  }
  return st;
}

std::vector<BoundState> refine_roots(const ModelParams& p, const StateIndex& idx, const Grid& g,
                                     const SpectrumOptions& opts) {
  std::vector<BoundState> states;
  const double shift = 2.0 * kPi * idx.n_omega;
  for (std::size_t i : sign_changes(g, idx.n_omega)) {
    MissEvaluator eval(p, idx.n_theta, idx.two_kappa, opts);
    eval.reseed(g.lambda[i - 1]);
    const auto f = [&](double E) { return eval(E).base + shift; };
    double lo = g.E[i - 1];
    double hi = g.E[i];
    const double f_lo = g.base[i - 1] + shift;
    const double f_hi = g.base[i] + shift;
    double root = hi;
    double width = 0.0;
    if (f_hi != 0.0) {
      std::uintmax_t max_iter = 200;
      const double tol = opts.energy_tol;
      const auto stop = [tol](double x, double y) { return std::abs(y - x) <= tol; };
      std::tie(lo, hi) = boost::math::tools::toms748_solve(f, lo, hi, f_lo, f_hi, stop, max_iter);
      root = 0.5 * (lo + hi);
      width = hi - lo;
    }
    states.push_back(build_state(p, idx, root, width, g.lambda[i - 1], opts));
  }
  return states;
}

std::string no_root_message(const StateIndex& idx, const SpectrumOptions& opts) {
  return "no sign change for (N_theta, N_omega, 2kappa) = (" + std::to_string(idx.n_theta) + ", " +
         std::to_string(idx.n_omega) + ", " + std::to_string(idx.two_kappa) + ") with 1 - E in [" +
         std::to_string(opts.gap_min) + ", " + std::to_string(opts.gap_max) + "]";
}

}  // namespace

bool ModelParams::in_window() const noexcept {
  return a > 0.0 && a < kRingRadiusMax && gamma > kCouplingMin && gamma < 0.0;
}

double coupled_miss(const ModelParams& params, const StateIndex& index, double E, const SpectrumOptions& opts) {
  check_params(params, index.two_kappa);
  MissEvaluator eval(params, index.n_theta, index.two_kappa, opts);
  return eval(E).base + 2.0 * kPi * index.n_omega;
}

std::vector<BoundState> find_bound_states(const ModelParams& params, const StateIndex& index,
                                          const SpectrumOptions& opts) {
  check_params(params, index.two_kappa);
  const Grid g = scan(params, index.n_theta, index.two_kappa, opts);
  return refine_roots(params, index, g, opts);
}

BoundState solve_bound_state(const ModelParams& params, const StateIndex& index, const SpectrumOptions& opts) {
  std::vector<BoundState> states = find_bound_states(params, index, opts);
  if (states.empty()) throw SolverError(ErrorCode::NoRootInGap, no_root_message(index, opts));
  if (states.size() > 1) {
    std::vector<double> energies;
    for (const auto& s : states) energies.push_back(s.E);
    throw MultipleRootsError(std::to_string(states.size()) + " roots in one winding class", std::move(energies));
  }
  return std::move(states.front());
}

std::pair<int, int> profile_windings(const BoundState& state) {
  const auto th = state.angular.profile.nodes();
  const auto om = state.radial.profile.nodes();
  if (th.empty() || om.empty()) throw SolverError(ErrorCode::InvalidArgument, "state has no profiles");
  const int nt = lift_to_winding(th.back().lift - th.front().lift, WindingConvention::theta());
  const int no = lift_to_winding(om.back().lift - om.front().lift, WindingConvention::omega(state.E));
  return {nt, no};
}

bool ExistenceReport::all_match() const noexcept {
  return std::all_of(cells.begin(), cells.end(), [](const ExistenceCell& c) { return c.matches(); });
}

ExistenceReport existence_scan(const ModelParams& params, int two_kappa, std::span<const int> n_thetas,
                               std::span<const int> n_omegas, const SpectrumOptions& opts) {
  ExistenceReport report;
  report.params = params;
  report.cells.resize(n_thetas.size() * n_omegas.size());
  for (std::size_t i = 0; i < n_thetas.size(); ++i) {
    for (std::size_t j = 0; j < n_omegas.size(); ++j) {
      ExistenceCell& c = report.cells[i * n_omegas.size() + j];
      c.index = {n_thetas[i], n_omegas[j], two_kappa};
      c.predicted = admissible(c.index);
    }
  }
  if (report.cells.empty()) return report;

  SpectrumOptions inner = opts;
  inner.threads = 1;
  parallel_for(n_thetas.size(), opts.threads, [&](std::size_t i) {
    const auto row = std::span(report.cells).subspan(i * n_omegas.size(), n_omegas.size());
    Grid g;
    try {
      check_params(params, two_kappa);
      g = scan(params, n_thetas[i], two_kappa, inner);
    } catch (const std::exception& e) {
      for (auto& c : row) c.note = e.what();
      return;
    }
    for (auto& c : row) {
      try {
        const std::vector<BoundState> states = refine_roots(params, c.index, g, inner);
        c.roots = static_cast<int>(states.size());
        c.found = !states.empty();
        if (c.found) c.E = states.front().E;
      } catch (const std::exception& e) {
        c.note = e.what();
      }
    }
  });
  return report;
}

std::string_view to_string(SplittingKind kind) noexcept {
  switch (kind) {
    case SplittingKind::Identical: return "identical";
    case SplittingKind::MagneticJ: return "mj";
    case SplittingKind::LambLike: return "lamb";
    case SplittingKind::Other: return "other";
  }
  return "other";
}

std::vector<SplittingRow> splitting_report(const ModelParams& params,
                                           std::span<const std::pair<StateIndex, StateIndex>> pairs,
                                           const SpectrumOptions& opts) {
  std::map<StateIndex, double> energy;
  for (const auto& [x, y] : pairs) {
    energy.emplace(x, 0.0);
    energy.emplace(y, 0.0);
  }
  std::vector<StateIndex> keys;
  for (const auto& kv : energy) keys.push_back(kv.first);
  std::vector<double> values(keys.size());
  SpectrumOptions inner = opts;
  inner.threads = 1;
  parallel_for(keys.size(), opts.threads,
               [&](std::size_t i) { values[i] = solve_bound_state(params, keys[i], inner).E; });
  for (std::size_t i = 0; i < keys.size(); ++i) energy[keys[i]] = values[i];

  std::vector<SplittingRow> rows;
  for (const auto& [x, y] : pairs) {
    SplittingRow row;
    row.first = x;
    row.second = y;
    row.E_first = energy.at(x);
    row.E_second = energy.at(y);
    row.delta = row.E_first - row.E_second;
    if (x == y) {
      row.kind = SplittingKind::Identical;
    } else if (x.n_theta == y.n_theta && x.n_omega == y.n_omega && x.two_kappa == -y.two_kappa) {
      row.kind = SplittingKind::MagneticJ;
    } else {
      try {
        const SpectroLabel lx = winding_to_label(x);
        const SpectroLabel ly = winding_to_label(y);
        if (lx.n == ly.n && lx.two_j == ly.two_j && (lx.k() > 0) != (ly.k() > 0)) row.kind = SplittingKind::LambLike;
      } catch (const SolverError&) {
      }
    }
    rows.push_back(row);
  }
  return rows;
}

Bispinor assemble_bispinor(const BoundState& state, const ModelParams& params, std::span<const double> r,
                           std::span<const double> theta) {
  const AngularContext actx{params.a, state.E, state.index.two_kappa};
  const RadialContext rctx{params.a, params.gamma, state.index.two_kappa, state.lambda, state.E};
  const std::vector<double> S = angular_amplitude(actx, state.angular, theta);
  const RadialAmplitude R = radial_amplitude(rctx, state.radial, r);

  Bispinor out;
  out.r.assign(r.begin(), r.end());
  out.theta.assign(theta.begin(), theta.end());
  for (auto& c : out.psi) c.resize(r.size() * theta.size());
  for (std::size_t i = 0; i < r.size(); ++i) {
    const double Om = state.radial.profile(r[i]);
    const std::complex<double> em = std::polar(1.0, -0.5 * Om);
    const std::complex<double> ep = std::conj(em);
    for (std::size_t j = 0; j < theta.size(); ++j) {
      const double Th = state.angular.profile(theta[j]);
      const double amp = R.R[i] * S[j];
      const double c = amp * std::cos(0.5 * Th);
      const double s = amp * std::sin(0.5 * Th);
      const std::size_t k = i * theta.size() + j;
      out.psi[0][k] = c * em;
      out.psi[1][k] = s * ep;
      out.psi[2][k] = c * ep;
      out.psi[3][k] = s * em;
    }
  }
  return out;
}

}  // namespace zgkn
