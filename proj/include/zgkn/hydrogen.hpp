#pragma once

// Exactly solvable point-nucleus Dirac-Coulomb problem on the half line r > 0
// (units hbar = c = m = 1). Serves as the ring-radius -> 0 reference.

#include <vector>

namespace zgkn {

/// Bound state of the Coulomb-Dirac radial operator with spin-orbit number k
/// and radial node count M = n - |k|. The pair (k > 0, M = 0) does not exist.
struct HydrogenState {
  int M = 0;
  int k = -1;
  double gamma = -0.2;

  int n() const noexcept;
};

/// Throws SolverError(ExcludedState) for k > 0, M = 0 and InvalidArgument for
/// k = 0, M < 0 or gamma outside (-sqrt(3)/2, 0].
void validate(const HydrogenState& state);

/// Sommerfeld fine-structure energy 1 / sqrt(1 + (gamma / (M + rho))^2).
double sommerfeld_energy(const HydrogenState& state);

/// Constants of the Gordon eigenfunctions. The normalisation pair (c1, c2) is
/// kept instead of mu = c1/c2 because mu is 0/0 when M = 0.
struct GordonAux {
  double E;
  double rho;  // sqrt(k^2 - gamma^2)
  double eta;  // sqrt(1 - E^2)
  double c1;
  double c2;
};

GordonAux gordon_aux(const HydrogenState& state);

/// Terminating Kummer series 1F1(alpha; beta; x) for alpha in {0, -1, -2, ...}.
/// Throws SolverError(NonTerminating) otherwise.
double confluent_F(double alpha, double beta, double x);

/// Jacobi polynomial P_n^(alpha,beta)(x) by the three-term recurrence.
double jacobi_P(int n, double alpha, double beta, double x);

struct GordonRadial {
  double phi1;
  double phi2;
  double u;
  double v;
};

GordonRadial gordon_radial(const HydrogenState& state, double r);

/// Continuous lift of the exact Prufer angle Omega(r) of a hydrogenic state.
/// The inner rational function has poles where the Gordon denominator
/// vanishes; the lift adds -2*pi at each one.
class GordonOmegaProfile {
 public:
  explicit GordonOmegaProfile(const HydrogenState& state);

  double operator()(double r) const;

  /// Omega(0+): asin(-gamma/k) for k < 0, -pi - asin(-gamma/k) for k > 0.
  double at_origin() const noexcept { return origin_; }
  /// Omega(+inf) = -2*pi*M - acos(E).
  double at_infinity() const noexcept;

  const GordonAux& aux() const noexcept { return aux_; }
  /// Positive radii where the denominator vanishes, ascending.
  const std::vector<double>& poles() const noexcept { return poles_; }
  /// Lift added on crossing each pole, measured from the principal branch.
  const std::vector<double>& pole_jumps() const noexcept { return jumps_; }

 private:
  double principal(double r) const;

  HydrogenState state_;
  GordonAux aux_;
  double origin_ = 0.0;
  double offset_ = 0.0;
  std::vector<double> poles_;
  std::vector<double> jumps_;
};

double gordon_omega_profile(const HydrogenState& state, double r);

/// Number of zeros in (0, inf) of mu*F(-M+1, 2rho+1, x) + F(-M, 2rho+1, x),
/// counted with a Sturm sequence.
int count_denominator_zeros(const HydrogenState& state);

/// Coefficients (ascending powers of x = 2*eta*r) of the Gordon denominator
/// c1*F(-M+1, 2rho+1, x) + c2*F(-M, 2rho+1, x).
std::vector<double> denominator_coefficients(const HydrogenState& state);

}  // namespace zgkn
