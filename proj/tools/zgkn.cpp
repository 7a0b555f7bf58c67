// Command-line front end. Units: hbar = c = m = 1, so energies are in units of
// the electron rest energy and lengths (the ring radius a) in reduced Compton
// wavelengths hbar/(m c).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "zgkn/cylinder.hpp"
#include "zgkn/error.hpp"
#include "zgkn/hydrogen.hpp"
#include "zgkn/labels.hpp"
#include "zgkn/parallel.hpp"
#include "zgkn/spectrum.hpp"

namespace {

using json = nlohmann::ordered_json;
using namespace zgkn;

constexpr int kExitFound = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNotFound = 3;
constexpr int kExitNumerical = 4;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Reads {"solve": {"a": 0.1, ...}, ...}: one object per subcommand, keys are
// long flag names without dashes.
class JsonConfig : public CLI::Config {
 public:
  std::string to_config(const CLI::App*, bool, bool, std::string) const override { return {}; }

  std::vector<CLI::ConfigItem> from_config(std::istream& input) const override {
    json j;
    try {
      input >> j;
    } catch (const json::exception& e) {
      throw CLI::ConversionError(std::string("config: ") + e.what());
    }
    std::vector<CLI::ConfigItem> items;
    walk(j, {}, items);
    return items;
  }

 private:
  static std::string scalar(const json& v) {
    if (v.is_string()) return v.get<std::string>();
    if (v.is_boolean()) return v.get<bool>() ? "true" : "false";
    return v.dump();
  }

  static void walk(const json& j, std::vector<std::string> parents, std::vector<CLI::ConfigItem>& items) {
    for (const auto& [key, value] : j.items()) {
      if (value.is_object()) {
        auto p = parents;
        p.push_back(key);
        walk(value, p, items);
        continue;
      }
      CLI::ConfigItem item;
      item.parents = parents;
      item.name = key;
      if (value.is_array()) {
        for (const auto& v : value) item.inputs.push_back(scalar(v));
      } else {
        item.inputs.push_back(scalar(value));
      }
      items.push_back(std::move(item));
    }
  }
};

class Output {
 public:
  explicit Output(const std::string& path) {
    if (path != "-") {
      file_.open(path);
      if (!file_) throw UsageError("cannot open " + path);
    }
  }
  std::ostream& stream() { return file_.is_open() ? file_ : std::cout; }

 private:
  std::ofstream file_;
};

std::string num(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

struct StateArgs {
  double a = 0.0;
  double gamma = 0.0;
  int two_kappa = 1;
  int n_theta = 0;
  int n_omega = 0;
};

struct SolverArgs {
  double tol_e = 1e-12;
  double ode_rel = 1e-10;
  double ode_abs = 1e-12;
  double eps = 1e-6;
  double cutoff_scale = 1.0;
  int scan_points = 64;
  unsigned threads = 0;

  SpectrumOptions options() const {
    SpectrumOptions o;
    o.energy_tol = tol_e;
    o.angular.ode = {ode_rel, ode_abs};
    o.angular.eps = eps;
    o.radial.ode = {ode_rel, ode_abs};
    o.cutoff_scale = cutoff_scale;
    o.scan_points = scan_points;
    o.threads = threads;
    return o;
  }
};

void add_state_flags(CLI::App* cmd, StateArgs& s, bool with_a = true) {
  if (with_a) cmd->add_option("--a", s.a, "ring radius a > 0")->required()->check(CLI::PositiveNumber);
  cmd->add_option("--gamma", s.gamma, "coupling gamma < 0")->required();
  cmd->add_option("--kappa2", s.two_kappa, "2 kappa (odd)")->capture_default_str();
  cmd->add_option("--ntheta", s.n_theta, "Theta winding N_theta")->capture_default_str();
  cmd->add_option("--nomega", s.n_omega, "Omega winding N_omega")->capture_default_str();
}

void add_solver_flags(CLI::App* cmd, SolverArgs& s) {
  cmd->add_option("--tol-e", s.tol_e, "energy root tolerance")->check(CLI::PositiveNumber)->capture_default_str();
  cmd->add_option("--ode-rel", s.ode_rel, "integrator relative tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--ode-abs", s.ode_abs, "integrator absolute tolerance")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--eps", s.eps, "distance kept from theta = 0, pi")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--cutoff-scale", s.cutoff_scale, "multiplier on the radial cutoff max(200, 40/eta)")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  cmd->add_option("--scan-points", s.scan_points, "energy scan points")
      ->check(CLI::Range(2, 100000))
      ->capture_default_str();
  cmd->add_option("--threads", s.threads, "worker threads (0: ZGKN_THREADS or all cores)")->capture_default_str();
}

void check_state(const StateArgs& s) {
  if (!(s.gamma < 0.0)) throw UsageError("--gamma must be negative");
  if (!is_odd(s.two_kappa)) throw UsageError("--kappa2 must be odd");
}

json state_json(const BoundState& st, const ModelParams& p, const SpectrumOptions& o) {
  json j;
  j["params"] = {{"a", p.a}, {"gamma", p.gamma}, {"two_kappa", st.index.two_kappa}, {"in_window", p.in_window()}};
  j["index"] = {{"n_theta", st.index.n_theta}, {"n_omega", st.index.n_omega}, {"two_kappa", st.index.two_kappa}};
  j["label"] = st.label ? json(format_label(*st.label)) : json(nullptr);
  j["E"] = st.E;
  j["lambda"] = st.lambda;
  j["residuals"] = {{"E", st.E_residual},
                    {"lambda", st.angular.bracket_width},
                    {"tail", st.E_tail},
                    {"miss", st.miss_residual},
                    {"theta_miss", st.angular.residual}};
  j["solver"] = {{"r0", st.radial.cutoff},
                 {"eps", o.angular.eps},
                 {"tolerances",
                  {{"energy", o.energy_tol},
                   {"lambda", o.angular.root_tol},
                   {"ode_rel", o.radial.ode.rel},
                   {"ode_abs", o.radial.ode.abs},
                   {"tail_energy", o.tail_energy_tol}}}};
  return j;
}

int cmd_solve(const StateArgs& s, const SolverArgs& sa, const std::string& format, const std::string& out_path) {
  check_state(s);
  const StateIndex idx{s.n_theta, s.n_omega, s.two_kappa};
  if (!admissible(idx)) std::cerr << "warning: index outside the existence predicate; attempting anyway\n";
  const ModelParams p{s.a, s.gamma};
  const SpectrumOptions o = sa.options();
  const BoundState st = solve_bound_state(p, idx, o);
  Output out(out_path);
  if (format == "json") {
    out.stream() << state_json(st, p, o).dump(2) << "\n";
  } else {
    out.stream() << "a,gamma,two_kappa,n_theta,n_omega,label,E,lambda,res_E,res_lambda,res_tail\n"
                 << num(p.a) << ',' << num(p.gamma) << ',' << idx.two_kappa << ',' << idx.n_theta << ','
                 << idx.n_omega << ',' << (st.label ? format_label(*st.label) : "") << ',' << num(st.E) << ','
                 << num(st.lambda) << ',' << num(st.E_residual) << ',' << num(st.angular.bracket_width) << ','
                 << num(st.E_tail) << '\n';
  }
  return kExitFound;
}

int cmd_spectrum(double a, double gamma, int nmax, const SolverArgs& sa, const std::string& format,
                 const std::string& out_path) {
  if (!(gamma < 0.0)) throw UsageError("--gamma must be negative");
  const ModelParams p{a, gamma};
  const std::vector<SpectroLabel> labels = labels_up_to(nmax);
  struct Row {
    std::optional<BoundState> state;
    std::string status;
  };
  std::vector<Row> rows(labels.size());
  SpectrumOptions o = sa.options();
  const unsigned threads = o.threads;
  o.threads = 1;
  parallel_for(labels.size(), threads, [&](std::size_t i) {
    try {
      rows[i].state = solve_bound_state(p, label_to_winding(labels[i]), o);
      rows[i].status = "ok";
    } catch (const SolverError& e) {
      rows[i].status = std::string(to_string(e.code()));
    }
  });

  bool all_ok = true;
  Output out(out_path);
  if (format == "json") {
    json arr = json::array();
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const StateIndex idx = label_to_winding(labels[i]);
      json j = rows[i].state ? state_json(*rows[i].state, p, o) : json::object();
      j["label"] = format_label(labels[i]);
      j["index"] = {{"n_theta", idx.n_theta}, {"n_omega", idx.n_omega}, {"two_kappa", idx.two_kappa}};
      j["status"] = rows[i].status;
      arr.push_back(std::move(j));
      all_ok = all_ok && rows[i].state.has_value();
    }
    out.stream() << arr.dump(2) << "\n";
  } else {
    out.stream() << "n,l,two_j,two_mj,label,n_theta,n_omega,two_kappa,E,lambda,status\n";
    for (std::size_t i = 0; i < rows.size(); ++i) {
      const SpectroLabel& l = labels[i];
      const StateIndex idx = label_to_winding(l);
      out.stream() << l.n << ',' << l.l << ',' << l.two_j << ',' << l.two_mj << ',' << format_term(l) << ','
                   << idx.n_theta << ',' << idx.n_omega << ',' << idx.two_kappa << ',';
      if (rows[i].state) {
        out.stream() << num(rows[i].state->E) << ',' << num(rows[i].state->lambda);
      } else {
        out.stream() << ',';
        all_ok = false;
      }
      out.stream() << ',' << rows[i].status << '\n';
    }
  }
  return all_ok ? kExitFound : kExitNumerical;
}

int cmd_hydrogen(double gamma, int nmax, const std::string& format, const std::string& out_path) {
  if (!(gamma <= 0.0 && gamma > -std::sqrt(3.0) / 2.0)) throw UsageError("--gamma must lie in (-sqrt(3)/2, 0]");
  Output out(out_path);
  json arr = json::array();
  if (format == "csv") out.stream() << "n,k,M,E\n";
  for (int n = 1; n <= nmax; ++n) {
    for (int k = -n; k <= n; ++k) {
      if (k == 0 || k == n) continue;
      const HydrogenState s{n - std::abs(k), k, gamma};
      const double E = sommerfeld_energy(s);
      if (format == "csv") {
        out.stream() << n << ',' << k << ',' << s.M << ',' << num(E) << '\n';
      } else {
        arr.push_back({{"n", n}, {"k", k}, {"M", s.M}, {"E", E}});
      }
    }
  }
  if (format == "json") out.stream() << arr.dump(2) << "\n";
  return kExitFound;
}

// Empty tokens are skipped so that `--a-list ""` is an empty sweep.
std::vector<double> parse_radii(const std::vector<std::string>& tokens) {
  std::vector<double> out;
  for (const std::string& t : tokens) {
    if (t.empty()) continue;
    std::size_t used = 0;
    double a = NAN;
    try {
      a = std::stod(t, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != t.size()) throw UsageError("not a number in --a-list: '" + t + "'");
    if (!(a > 0.0)) throw UsageError("every ring radius in --a-list must be positive");
    out.push_back(a);
  }
  return out;
}

int cmd_sweep(const StateArgs& s, const std::vector<std::string>& a_tokens, const SolverArgs& sa,
              const std::string& out_path) {
  check_state(s);
  const std::vector<double> a_list = parse_radii(a_tokens);
  Output out(out_path);
  if (a_list.empty()) return kExitFound;
  const StateIndex idx{s.n_theta, s.n_omega, s.two_kappa};
  struct Row {
    double E = NAN;
    double lambda = NAN;
    std::string flag;
  };
  std::vector<Row> rows(a_list.size());
  SpectrumOptions o = sa.options();
  const unsigned threads = o.threads;
  o.threads = 1;
  parallel_for(a_list.size(), threads, [&](std::size_t i) {
    const ModelParams p{a_list[i], s.gamma};
    try {
      const BoundState st = solve_bound_state(p, idx, o);
      rows[i] = {st.E, st.lambda, p.in_window() ? "ok" : "outside-theorem-window"};
    } catch (const SolverError& e) {
      rows[i].flag = std::string(to_string(e.code()));
    }
  });
  bool all_ok = true;
  out.stream() << "a,E,lambda,flag\n";
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const bool ok = !std::isnan(rows[i].E);
    all_ok = all_ok && ok;
    out.stream() << num(a_list[i]) << ',' << (ok ? num(rows[i].E) : "") << ','
                 << (ok ? num(rows[i].lambda) : "") << ',' << rows[i].flag << '\n';
  }
  return all_ok ? kExitFound : kExitNumerical;
}

std::pair<int, int> parse_grid(const std::string& g) {
  int nx = 0, ny = 0;
  char x = 0;
  std::istringstream in(g);
  if (!(in >> nx >> x >> ny) || (x != 'x' && x != 'X') || !in.eof()) throw UsageError("--grid must read NxM");
  if (nx < 1 || ny < 1) throw UsageError("--grid needs positive sizes");
  return {nx, ny};
}

int cmd_portrait(const std::string& system_name, const CylinderParams& cp, const std::string& grid,
                 const std::string& out_path) {
  const auto [nx, ny] = parse_grid(grid);
  const CylinderSystem system = system_name == "theta" ? CylinderSystem::Theta : CylinderSystem::Omega;
  if (!is_odd(cp.two_kappa)) throw UsageError("--kappa2 must be odd");
  if (system == CylinderSystem::Omega && !(cp.a > 0.0)) throw UsageError("the omega cylinder needs --a > 0");
  if (!(cp.E > 0.0 && cp.E < 1.0)) throw UsageError("--E must lie in (0, 1)");

  Output out(out_path);
  out.stream() << "kind,x,y,dx,dy\n";
  for (const FieldSample& f : sample_field(system, cp, nx, ny)) {
    out.stream() << "field," << num(f.x) << ',' << num(f.y) << ',' << num(f.dx) << ',' << num(f.dy) << '\n';
  }
  // Equilibria: dx, dy carry the real parts of the two Jacobian eigenvalues.
  for (const Equilibrium& e : equilibria(system, cp)) {
    out.stream() << "equilibrium:" << e.name << ',' << num(e.x) << ',' << num(e.y) << ','
                 << num(e.eigenvalues[0].real()) << ',' << num(e.eigenvalues[1].real()) << '\n';
  }
  for (const OrbitPoint& o : shot_orbit(system, cp)) {
    const Vec2 f = cylinder_flow(system, o.x, o.y, cp);
    out.stream() << "orbit," << num(o.x) << ',' << num(o.y) << ',' << num(f[0]) << ',' << num(f[1]) << '\n';
  }
  return kExitFound;
}

int cmd_profile(const StateArgs& s, double rmax, int points, const SolverArgs& sa, const std::string& out_path) {
  check_state(s);
  if (points < 2) throw UsageError("--points must be at least 2");
  const ModelParams p{s.a, s.gamma};
  const SpectrumOptions o = sa.options();
  const BoundState st = solve_bound_state(p, {s.n_theta, s.n_omega, s.two_kappa}, o);
  if (!(rmax > 0.0 && rmax <= st.radial.cutoff)) {
    throw UsageError("--rmax must lie in (0, " + num(st.radial.cutoff) + "]");
  }
  const std::vector<double> rs = uniform_grid(-rmax, rmax, points);
  const std::vector<double> ts = theta_grid(o.angular.eps, points);
  const RadialAmplitude R = radial_amplitude({p.a, p.gamma, s.two_kappa, st.lambda, st.E}, st.radial, rs);
  const std::vector<double> S = angular_amplitude({p.a, st.E, s.two_kappa}, st.angular, ts);

  Output out(out_path);
  out.stream() << "section,x,phase,amplitude,u,v\n";
  for (std::size_t i = 0; i < rs.size(); ++i) {
    out.stream() << "radial," << num(rs[i]) << ',' << num(st.radial.profile(rs[i])) << ',' << num(R.R[i]) << ','
                 << num(R.u[i]) << ',' << num(R.v[i]) << '\n';
  }
  for (std::size_t i = 0; i < ts.size(); ++i) {
    out.stream() << "angular," << num(ts[i]) << ',' << num(st.angular.profile(ts[i])) << ',' << num(S[i])
                 << ",,\n";
  }
  return kExitFound;
}

// Re-checks a solve record: the angular eigenvalue at the stored E, the sign
// change of the coupled miss across E, and the label.
int cmd_verify(const std::string& in_path, const std::string& out_path) {
  std::ifstream in(in_path);
  if (!in) throw UsageError("cannot open " + in_path);
  json j;
  try {
    in >> j;
  } catch (const json::exception& e) {
    throw UsageError(std::string("not a result file: ") + e.what());
  }
  ModelParams p;
  StateIndex idx;
  double E = 0.0, lambda = 0.0, tol_e = 0.0, tol_lambda = 0.0;
  SpectrumOptions o;
  try {
    p = {j.at("params").at("a").get<double>(), j.at("params").at("gamma").get<double>()};
    idx = {j.at("index").at("n_theta").get<int>(), j.at("index").at("n_omega").get<int>(),
           j.at("index").at("two_kappa").get<int>()};
    E = j.at("E").get<double>();
    lambda = j.at("lambda").get<double>();
    const json& tol = j.at("solver").at("tolerances");
    tol_e = tol.at("energy").get<double>();
    tol_lambda = tol.at("lambda").get<double>();
    o.angular.eps = j.at("solver").at("eps").get<double>();
    o.angular.ode = o.radial.ode = {tol.at("ode_rel").get<double>(), tol.at("ode_abs").get<double>()};
    o.cutoff_scale = j.at("solver").at("r0").get<double>() / default_cutoff(E);
  } catch (const json::exception& e) {
    throw UsageError(std::string("malformed result file: ") + e.what());
  }

  const AngularSolution ang = solve_lambda({p.a, E, idx.two_kappa}, idx.n_theta, {}, o.angular);
  const bool lambda_ok = std::abs(ang.lambda - lambda) <= std::max(1e-8, 100.0 * tol_lambda);
  const double d = std::max(100.0 * tol_e, 1e-10);
  const double below = coupled_miss(p, idx, E - d, o);
  const double above = coupled_miss(p, idx, E + d, o);
  const bool bracket_ok = below > 0.0 && above < 0.0;
  bool label_ok = true;
  if (j.contains("label") && j["label"].is_string()) {
    label_ok = format_label(winding_to_label(idx)) == j["label"].get<std::string>();
  }
  const bool ok = lambda_ok && bracket_ok && label_ok;

  json report = {{"verified", ok},
                 {"checks",
                  {{"lambda", lambda_ok},
                   {"energy_bracket", bracket_ok},
                   {"label", label_ok},
                   {"lambda_recomputed", ang.lambda},
                   {"miss_below", below},
                   {"miss_above", above}}}};
  Output out(out_path);
  out.stream() << report.dump(2) << "\n";
  return ok ? kExitFound : kExitNumerical;
}

int exit_code_for(const SolverError& e) {
  switch (e.code()) {
    case ErrorCode::NoRootInGap: return kExitNotFound;
    case ErrorCode::InvalidArgument:
    case ErrorCode::InvalidIndex:
    case ErrorCode::InvalidLabel:
    case ErrorCode::ExcludedState:
    case ErrorCode::ZeroN: return kExitUsage;
    default: return kExitNumerical;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Point spectrum of the Dirac operator around a charged ring (zero-gravity Kerr-Newman).\n"
      "Units: hbar = c = m = 1. Energies are in units of m c^2; the ring radius a is in\n"
      "reduced Compton wavelengths hbar/(m c), so the guaranteed window a < 1 - 1/sqrt(2)\n"
      "reads a < (1 - 1/sqrt(2)) hbar/(m c). ZGKN_THREADS sets the worker count."};
  app.config_formatter(std::make_shared<JsonConfig>());
  app.set_config("--config", "", "JSON file mirroring the flags, one object per subcommand");
  app.require_subcommand(1);

  std::string solve_format = "json";
  std::string table_format = "csv";
  std::string out_path = "-";
  const auto add_io = [&](CLI::App* cmd, std::string* format) {
    if (format) {
      cmd->add_option("--format", *format, "output format")
          ->check(CLI::IsMember({"csv", "json"}))
          ->capture_default_str();
    }
    cmd->add_option("--output,-o", out_path, "output file ('-' for stdout)")->capture_default_str();
  };

  StateArgs state;
  SolverArgs solver;

  auto* solve = app.add_subcommand("solve", "solve one bound state by its windings");
  add_state_flags(solve, state);
  add_solver_flags(solve, solver);
  add_io(solve, &solve_format);

  double sp_a = 0.0, sp_gamma = 0.0;
  int nmax = 1;
  auto* spectrum = app.add_subcommand("spectrum", "solve every labelled state with n <= nmax");
  spectrum->add_option("--a", sp_a, "ring radius a > 0")->required()->check(CLI::PositiveNumber);
  spectrum->add_option("--gamma", sp_gamma, "coupling gamma < 0")->required();
  spectrum->add_option("--nmax", nmax, "largest principal number")->required()->check(CLI::NonNegativeNumber);
  add_solver_flags(spectrum, solver);
  add_io(spectrum, &table_format);

  double h_gamma = 0.0;
  int h_nmax = 1;
  auto* hydrogen = app.add_subcommand("hydrogen", "exact a = 0 (Sommerfeld) energies");
  hydrogen->add_option("--gamma", h_gamma, "coupling in (-sqrt(3)/2, 0]")->required();
  hydrogen->add_option("--nmax", h_nmax, "largest principal number")->required()->check(CLI::NonNegativeNumber);
  add_io(hydrogen, &table_format);

  std::vector<std::string> a_list;
  auto* sweep = app.add_subcommand("sweep", "one state over a list of ring radii");
  add_state_flags(sweep, state, false);
  sweep->add_option("--a-list", a_list, "ring radii (comma separated)")->delimiter(',')->expected(0, -1);
  add_solver_flags(sweep, solver);
  add_io(sweep, nullptr);

  std::string system = "theta";
  std::string grid;
  CylinderParams cp;
  auto* portrait = app.add_subcommand("portrait", "vector field samples and one shot orbit on a cylinder");
  portrait->add_option("--system", system, "theta or omega")
      ->check(CLI::IsMember({"theta", "omega"}))
      ->capture_default_str();
  portrait->add_option("--a", cp.a, "ring radius")->check(CLI::NonNegativeNumber)->capture_default_str();
  portrait->add_option("--gamma", cp.gamma, "coupling")->capture_default_str();
  portrait->add_option("--kappa2", cp.two_kappa, "2 kappa (odd)")->capture_default_str();
  portrait->add_option("--lambda", cp.lambda, "angular eigenvalue")->capture_default_str();
  portrait->add_option("--E", cp.E, "energy in (0, 1)")->capture_default_str();
  portrait->add_option("--grid", grid, "samples NxM (horizontal x vertical)")->required();
  add_io(portrait, nullptr);

  double rmax = 20.0;
  int points = 201;
  auto* profile = app.add_subcommand("profile", "phases and amplitudes of a solved state");
  add_state_flags(profile, state);
  profile->add_option("--rmax", rmax, "radial half-range")->capture_default_str();
  profile->add_option("--points", points, "grid points per section")->capture_default_str();
  add_solver_flags(profile, solver);
  add_io(profile, nullptr);

  std::string in_path;
  auto* verify = app.add_subcommand("verify", "re-check a JSON record written by solve");
  verify->add_option("input", in_path, "result file")->required();
  add_io(verify, nullptr);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) return cmd_solve(state, solver, solve_format, out_path);
    if (spectrum->parsed()) return cmd_spectrum(sp_a, sp_gamma, nmax, solver, table_format, out_path);
    if (hydrogen->parsed()) return cmd_hydrogen(h_gamma, h_nmax, table_format, out_path);
    if (sweep->parsed()) return cmd_sweep(state, a_list, solver, out_path);
    if (portrait->parsed()) return cmd_portrait(system, cp, grid, out_path);
    if (profile->parsed()) return cmd_profile(state, rmax, points, solver, out_path);
    if (verify->parsed()) return cmd_verify(in_path, out_path);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const MultipleRootsError& e) {
    std::cerr << "error: " << e.what() << ":";
    for (double E : e.energies()) std::cerr << ' ' << num(E);
    std::cerr << "\n";
    return kExitNumerical;
  } catch (const SolverError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
