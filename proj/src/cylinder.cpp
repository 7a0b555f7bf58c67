#include "zgkn/cylinder.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "zgkn/angular.hpp"
#include "zgkn/error.hpp"
#include "zgkn/radial.hpp"

namespace zgkn {

namespace {

constexpr double kPi = std::numbers::pi;

double reduce(double y) {
  double r = std::remainder(y, 2.0 * kPi);
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

std::array<std::complex<double>, 2> jacobian_eigenvalues(CylinderSystem s, double x, double y,
                                                         const CylinderParams& p) {
  const double h = 1e-6;
  const Vec2 fxp = cylinder_flow(s, x + h, y, p);
  const Vec2 fxm = cylinder_flow(s, x - h, y, p);
  const Vec2 fyp = cylinder_flow(s, x, y + h, p);
  const Vec2 fym = cylinder_flow(s, x, y - h, p);
  const double a = (fxp[0] - fxm[0]) / (2 * h);
  const double b = (fyp[0] - fym[0]) / (2 * h);
  const double c = (fxp[1] - fxm[1]) / (2 * h);
  const double d = (fyp[1] - fym[1]) / (2 * h);
  const double half_tr = 0.5 * (a + d);
  const std::complex<double> root = std::sqrt(std::complex<double>(half_tr * half_tr - (a * d - b * c)));
  std::array<std::complex<double>, 2> ev{half_tr - root, half_tr + root};
  if (ev[1].real() < ev[0].real()) std::swap(ev[0], ev[1]);
  return ev;
}

}  // namespace

Vec2 theta_flow(double theta, double Theta, const CylinderParams& p) {
  const double s = std::sin(theta);
  const double c = std::cos(theta);
  return {s, -2.0 * p.a * s * c * std::cos(Theta) + 2.0 * (p.a * p.E * s * s - p.kappa()) * std::sin(Theta) +
                 2.0 * p.lambda * s};
}

Vec2 omega_flow(double xi, double Omega, const CylinderParams& p) {
  const double s = std::sin(xi);
  const double c = std::cos(xi);
  return {c * c, 2.0 * p.a * s * std::cos(Omega) + 2.0 * p.lambda * c * std::sin(Omega) + 2.0 * p.gamma * s * c +
                     2.0 * p.kappa() * c * c - 2.0 * p.a * p.E};
}

Vec2 cylinder_flow(CylinderSystem system, double x, double y, const CylinderParams& p) {
  return system == CylinderSystem::Theta ? theta_flow(x, y, p) : omega_flow(x, y, p);
}

std::array<double, 2> cylinder_span(CylinderSystem system) {
  return system == CylinderSystem::Theta ? std::array<double, 2>{0.0, kPi}
                                         : std::array<double, 2>{-0.5 * kPi, 0.5 * kPi};
}

std::vector<FieldSample> sample_field(CylinderSystem system, const CylinderParams& p, int nx, int ny) {
  if (nx < 1 || ny < 1) throw SolverError(ErrorCode::InvalidArgument, "portrait grid must be at least 1x1");
  const auto [lo, hi] = cylinder_span(system);
  std::vector<FieldSample> out;
  out.reserve(static_cast<std::size_t>(nx) * ny);
  for (int i = 0; i < nx; ++i) {
    const double x = nx == 1 ? 0.5 * (lo + hi) : lo + (hi - lo) * i / (nx - 1);
    for (int j = 0; j < ny; ++j) {
      const double y = -kPi + 2.0 * kPi * j / ny;
      const Vec2 f = cylinder_flow(system, x, y, p);
      out.push_back({x, y, f[0], f[1]});
    }
  }
  return out;
}

std::vector<Equilibrium> equilibria(CylinderSystem system, const CylinderParams& p) {
  std::vector<Equilibrium> out;
  const auto add = [&](std::string side, double x, double y) {
    Equilibrium e{"", x, reduce(y), jacobian_eigenvalues(system, x, y, p)};
    const bool saddle = e.eigenvalues[0].real() * e.eigenvalues[1].real() < 0.0;
    e.name = (saddle ? "S" : "N") + side;
    out.push_back(std::move(e));
  };
  if (system == CylinderSystem::Theta) {
    for (double y : {0.0, kPi}) add("-", 0.0, y);
    for (double y : {0.0, kPi}) add("+", kPi, y);
    return out;
  }
  if (!(p.E > 0.0 && p.E < 1.0)) throw SolverError(ErrorCode::InvalidArgument, "E outside (0, 1)");
  // Degenerate in xi: one eigenvalue vanishes, the other is -+2 a eta.
  const double w = std::acos(p.E);
  const auto add_degenerate = [&](std::string name, double x, double y) {
    out.push_back({std::move(name), x, reduce(y), jacobian_eigenvalues(system, x, y, p)});
  };
  add_degenerate("S-_E", -0.5 * kPi, -kPi + w);
  add_degenerate("N-_E", -0.5 * kPi, kPi - w);
  add_degenerate("S+_E", 0.5 * kPi, -w);
  add_degenerate("N+_E", 0.5 * kPi, w);
  return out;
}

std::vector<OrbitPoint> shot_orbit(CylinderSystem system, const CylinderParams& p) {
  std::vector<OrbitPoint> out;
  if (system == CylinderSystem::Theta) {
    const ThetaShot shot = shoot_theta({p.a, p.E, p.two_kappa}, p.lambda);
    for (const LiftNode& n : shot.profile.nodes()) out.push_back({n.t, n.lift});
    return out;
  }
  const RadialContext ctx{p.a, p.gamma, p.two_kappa, p.lambda, p.E};
  const RadialShot shot = shoot_omega(ctx, default_cutoff(p.E));
  for (const LiftNode& n : shot.profile.nodes()) out.push_back({std::atan(n.t / p.a), n.lift});
  return out;
}

}  // namespace zgkn
