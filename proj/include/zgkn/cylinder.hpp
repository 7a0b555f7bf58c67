#pragma once

// The two phase equations as smooth flows on closed cylinders.
//   Theta system, (theta, Theta) in [0, pi] x S^1:
//     theta' = sin(theta),  Theta' = sin(theta) * dTheta/dtheta
//   Omega system, (xi, Omega) in [-pi/2, pi/2] x S^1 with r = a tan(xi):
//     xi' = cos^2(xi),
//     Omega' = 2a sin(xi) cos(Omega) + 2 lambda cos(xi) sin(Omega)
//              + 2 gamma sin(xi) cos(xi) + 2 kappa cos^2(xi) - 2 a E
// Boundary circles are invariant; the equilibria sit on them.

#include <array>
#include <complex>
#include <string>
#include <vector>

namespace zgkn {

enum class CylinderSystem { Theta, Omega };

struct CylinderParams {
  double a = 0.0;
  double gamma = -0.3;
  int two_kappa = 1;
  double lambda = -1.0;
  double E = 0.5;

  double kappa() const noexcept { return 0.5 * two_kappa; }
};

using Vec2 = std::array<double, 2>;

Vec2 theta_flow(double theta, double Theta, const CylinderParams& p);
Vec2 omega_flow(double xi, double Omega, const CylinderParams& p);
Vec2 cylinder_flow(CylinderSystem system, double x, double y, const CylinderParams& p);

/// Horizontal extent of the cylinder: [0, pi] or [-pi/2, pi/2].
std::array<double, 2> cylinder_span(CylinderSystem system);

struct FieldSample {
  double x;
  double y;
  double dx;
  double dy;
};

/// nx * ny samples, x-major, over the closed horizontal span and y in [-pi, pi).
/// Throws SolverError(InvalidArgument) unless both counts are positive.
std::vector<FieldSample> sample_field(CylinderSystem system, const CylinderParams& p, int nx, int ny);

struct Equilibrium {
  std::string name;  // S-/S+ saddles, N-/N+ nodes (Theta); S-_E/S+_E (Omega)
  double x;
  double y;
  std::array<std::complex<double>, 2> eigenvalues;  // of the finite-difference Jacobian
};

/// Boundary equilibria with y reduced to (-pi, pi]. Omega needs 0 < E < 1.
std::vector<Equilibrium> equilibria(CylinderSystem system, const CylinderParams& p);

struct OrbitPoint {
  double x;
  double y;  // continuous lift
};

/// Two-sided shot at p drawn in cylinder coordinates; a connector when
/// (E, lambda) is an eigenpair, two branches meeting with a jump otherwise.
std::vector<OrbitPoint> shot_orbit(CylinderSystem system, const CylinderParams& p);

}  // namespace zgkn
