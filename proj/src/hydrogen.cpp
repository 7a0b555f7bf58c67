#include "zgkn/hydrogen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "zgkn/error.hpp"

namespace zgkn {

namespace {

constexpr double kPi = std::numbers::pi;

using Poly = std::vector<double>;  // ascending powers

double horner(const Poly& p, double x) {
  double acc = 0.0;
  for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
  return acc;
}

void trim(Poly& p, double scale) {
  while (p.size() > 1 && std::abs(p.back()) <= 1e-13 * scale) p.pop_back();
}

Poly derivative(const Poly& p) {
  Poly d;
  for (std::size_t i = 1; i < p.size(); ++i) d.push_back(static_cast<double>(i) * p[i]);
  if (d.empty()) d.push_back(0.0);
  return d;
}

// Remainder of num / den.
Poly remainder(Poly num, const Poly& den) {
  const std::size_t dn = den.size() - 1;
  while (num.size() - 1 >= dn && num.size() > 1) {
    const double q = num.back() / den.back();
    const std::size_t shift = num.size() - 1 - dn;
    for (std::size_t i = 0; i <= dn; ++i) num[shift + i] -= q * den[i];
    num.pop_back();
    if (num.size() - 1 < dn) break;
  }
  return num;
}

int sign_changes(const std::vector<double>& values) {
  int changes = 0;
  int last = 0;
  for (double v : values) {
    const int s = (v > 0) - (v < 0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

Poly kummer_coefficients(int alpha, double beta) {
  Poly c{1.0};
  double term = 1.0;
  for (int j = 0; j < -alpha; ++j) {
    term *= (alpha + j) / ((j + 1.0) * (beta + j));
    c.push_back(term);
  }
  return c;
}

}  // namespace

int HydrogenState::n() const noexcept { return M + std::abs(k); }

void validate(const HydrogenState& s) {
  if (s.k == 0) throw SolverError(ErrorCode::InvalidArgument, "k must be nonzero");
  if (s.M < 0) throw SolverError(ErrorCode::InvalidArgument, "M must be nonnegative");
  if (s.k > 0 && s.M == 0) {
    throw SolverError(ErrorCode::ExcludedState, "k > 0 with M = 0 is not a bound state");
  }
  if (!(s.gamma <= 0.0 && s.gamma > -std::sqrt(3.0) / 2.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "gamma must lie in (-sqrt(3)/2, 0]");
  }
}

double sommerfeld_energy(const HydrogenState& s) {
  validate(s);
  const double rho = std::sqrt(double(s.k) * s.k - s.gamma * s.gamma);
  const double q = s.gamma / (s.M + rho);
  return 1.0 / std::sqrt(1.0 + q * q);
}

GordonAux gordon_aux(const HydrogenState& s) {
  validate(s);
  if (!(s.gamma < 0.0)) {
    throw SolverError(ErrorCode::InvalidArgument, "eigenfunctions need gamma < 0");
  }
  GordonAux aux{};
  aux.E = sommerfeld_energy(s);
  aux.rho = std::sqrt(double(s.k) * s.k - s.gamma * s.gamma);
  aux.eta = std::sqrt((1.0 - aux.E) * (1.0 + aux.E));
  aux.c2 = 1.0;
  aux.c1 = s.M == 0 ? 0.0 : s.M / (s.k + s.gamma / aux.eta);
  return aux;
}

double confluent_F(double alpha, double beta, double x) {
  if (!(alpha <= 0.0) || alpha != std::floor(alpha)) {
    throw SolverError(ErrorCode::NonTerminating,
                      "alpha = " + std::to_string(alpha) + " is not a nonpositive integer");
  }
  if (!(beta > 0.0)) throw SolverError(ErrorCode::InvalidArgument, "beta must be positive");
  const int terms = static_cast<int>(-alpha);
  double sum = 1.0;
  double term = 1.0;
  for (int j = 0; j < terms; ++j) {
    term *= (alpha + j) / ((j + 1.0) * (beta + j)) * x;
    sum += term;
  }
  return sum;
}

double jacobi_P(int n, double alpha, double beta, double x) {
  if (n < 0) throw SolverError(ErrorCode::InvalidArgument, "degree must be nonnegative");
  double p0 = 1.0;
  if (n == 0) return p0;
  double p1 = 0.5 * (alpha - beta) + 0.5 * (alpha + beta + 2.0) * x;
  for (int m = 2; m <= n; ++m) {
    const double s = 2.0 * m + alpha + beta;
    const double a1 = 2.0 * m * (m + alpha + beta) * (s - 2.0);
    const double a2 = (s - 1.0) * (alpha * alpha - beta * beta);
    const double a3 = (s - 2.0) * (s - 1.0) * s;
    const double a4 = 2.0 * (m + alpha - 1.0) * (m + beta - 1.0) * s;
    const double p2 = ((a2 + a3 * x) * p1 - a4 * p0) / a1;
    p0 = p1;
    p1 = p2;
  }
  return p1;
}

GordonRadial gordon_radial(const HydrogenState& s, double r) {
  if (!(r > 0.0)) throw SolverError(ErrorCode::DomainBoundary, "r must be positive");
  const GordonAux aux = gordon_aux(s);
  const double x = 2.0 * aux.eta * r;
  const double envelope = std::exp(-aux.eta * r) * std::pow(r, aux.rho);
  const double beta = 2.0 * aux.rho + 1.0;
  GordonRadial g{};
  g.phi1 = aux.c1 == 0.0 ? 0.0 : aux.c1 * envelope * confluent_F(-s.M + 1, beta, x);
  g.phi2 = aux.c2 * envelope * confluent_F(-s.M, beta, x);
  g.u = std::sqrt(1.0 + aux.E) * (g.phi1 + g.phi2);
  g.v = std::sqrt(1.0 - aux.E) * (g.phi1 - g.phi2);
  return g;
}

std::vector<double> denominator_coefficients(const HydrogenState& s) {
  const GordonAux aux = gordon_aux(s);
  const double beta = 2.0 * aux.rho + 1.0;
  Poly d = kummer_coefficients(-s.M, beta);
  for (double& c : d) c *= aux.c2;
  if (aux.c1 != 0.0) {
    const Poly f1 = kummer_coefficients(-s.M + 1, beta);
    for (std::size_t i = 0; i < f1.size(); ++i) d[i] += aux.c1 * f1[i];
  }
  return d;
}

int count_denominator_zeros(const HydrogenState& s) {
  Poly p = denominator_coefficients(s);
  double scale = 0.0;
  for (double c : p) scale = std::max(scale, std::abs(c));
  trim(p, scale);
  if (p.size() == 1) return 0;

  std::vector<Poly> chain{p, derivative(p)};
  while (chain.back().size() > 1) {
    Poly r = remainder(chain[chain.size() - 2], chain.back());
    for (double& c : r) c = -c;
    double rs = 0.0;
    for (double c : r) rs = std::max(rs, std::abs(c));
    trim(r, scale);
    if (rs <= 1e-13 * scale) break;
    chain.push_back(std::move(r));
  }

  std::vector<double> at_zero;
  std::vector<double> at_inf;
  for (const Poly& q : chain) {
    at_zero.push_back(q.front());
    at_inf.push_back(q.back());
  }
  return sign_changes(at_zero) - sign_changes(at_inf);
}

GordonOmegaProfile::GordonOmegaProfile(const HydrogenState& state)
    : state_(state), aux_(gordon_aux(state)) {
  const double ratio = -state.gamma / state.k;
  origin_ = state.k < 0 ? std::asin(ratio) : -kPi - std::asin(ratio);
  offset_ = 2.0 * kPi * std::round((origin_ - principal(0.0)) / (2.0 * kPi));

  // Isolate denominator roots by sign changes on a graded grid in x = 2*eta*r.
  const Poly d = denominator_coefficients(state);
  double bound = 1.0;
  for (std::size_t i = 0; i + 1 < d.size(); ++i) bound = std::max(bound, 1.0 + std::abs(d[i] / d.back()));
  const int expected = count_denominator_zeros(state);
  for (int samples = 4096; static_cast<int>(poles_.size()) != expected && samples <= (1 << 20);
       samples *= 4) {
    poles_.clear();
    double x_prev = 0.0;
    double f_prev = horner(d, x_prev);
    for (int i = 1; i <= samples; ++i) {
      const double u = static_cast<double>(i) / samples;
      const double x = bound * u * u;
      const double f = horner(d, x);
      if ((f_prev < 0) != (f < 0)) {
        double lo = x_prev, hi = x;
        for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
          const double mid = 0.5 * (lo + hi);
          if ((horner(d, mid) < 0) == (f_prev < 0)) lo = mid; else hi = mid;
        }
        poles_.push_back(0.5 * (lo + hi) / (2.0 * aux_.eta));
      }
      x_prev = x;
      f_prev = f;
    }
  }
  if (static_cast<int>(poles_.size()) != expected) {
    throw SolverError(ErrorCode::InvalidArgument, "failed to isolate Gordon denominator roots");
  }
  for (double p : poles_) {
    const double delta = 1e-7 * p;
    const double jump = principal(p + delta) - principal(p - delta);
    jumps_.push_back(-2.0 * kPi * std::round(jump / (2.0 * kPi)));
  }
}

double GordonOmegaProfile::principal(double r) const {
  const double x = 2.0 * aux_.eta * r;
  const double beta = 2.0 * aux_.rho + 1.0;
  const double f1 = aux_.c1 == 0.0 ? 0.0 : aux_.c1 * confluent_F(-state_.M + 1, beta, x);
  const double f0 = aux_.c2 * confluent_F(-state_.M, beta, x);
  const double s = std::sqrt((1.0 - aux_.E) / (1.0 + aux_.E));
  return 2.0 * std::atan(s * (f1 - f0) / (f1 + f0));
}

double GordonOmegaProfile::operator()(double r) const {
  if (!(r > 0.0)) throw SolverError(ErrorCode::DomainBoundary, "r must be positive");
  double value = principal(r) + offset_;
  for (std::size_t i = 0; i < poles_.size() && poles_[i] < r; ++i) value += jumps_[i];
  return value;
}

double GordonOmegaProfile::at_infinity() const noexcept {
  return -2.0 * kPi * state_.M - std::acos(aux_.E);
}

double gordon_omega_profile(const HydrogenState& state, double r) {
  return GordonOmegaProfile(state)(r);
}

}  // namespace zgkn
