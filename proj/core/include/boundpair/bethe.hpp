#pragma once

// Closed-form bound-pair band quantities of the two-boson ring.
//
// Energies follow the sign of the lattice Hamiltonian H = -kappa sum(a+a)
// - (U/2) sum n(n-1): for U > 0 the pair is bound *below* the continuum,
// eps_k = -sgn(U) sqrt(U^2 + 16 kappa^2 cos^2(k/2)). band_energy_magnitude
// gives |eps_k| for comparisons against tabulated magnitudes.

#include "boundpair/model.hpp"

namespace boundpair {

struct FidelityPoint {
  double time = 0.0;
  double distance = 0.0;  // v_g * t
  double value = 1.0;
};

double band_energy(double k, const LatticeParams& params);
double band_energy_magnitude(double k, const LatticeParams& params);
// d eps / dk
double band_slope(double k, const LatticeParams& params);

// zeta_k = 4 kappa cos(k/2) / U
double bound_zeta(double k, const LatticeParams& params);
// mu_k = asinh(1 / zeta_k); +inf where zeta_k = 0.
double bound_mu(double k, const LatticeParams& params);

// Bound relative wavefunction f^k(r) of the infinite ring,
// sgn(zeta)^r (1 + zeta^2)^(-1/4) * {1, r = 0; sqrt(2) e^(-|mu| r), r >= 1}.
double bound_amplitude(double k, int r, const LatticeParams& params);

// lambda_k = |2 sqrt(2) (kappa / U) cos(k/2)|
double pair_size(double k, const LatticeParams& params);

// Zero of the band curvature in (pi/2, pi], with the packet quantities
// evaluated there. Throws DomainError for U = 0.
BandDescriptor linear_point(const LatticeParams& params);

// |d eps / dk| at the linear point, closed form.
double group_velocity_magnitude(const LatticeParams& params);
// Signed group velocity: magnitude from the closed form, direction from a
// central difference of band_energy at k0.
double group_velocity(const LatticeParams& params);
// U -> 0 limit of the linear-point group velocity.
inline double free_group_velocity(const LatticeParams& params) { return 2.0 * params.hopping(); }

// Cubic-dispersion fidelity of a Gaussian band packet after travelling
// v_g * t sites:
//   F(t) = (1/Omega) sum_k exp(-(k-k0)^2/alpha^2) cos[(k-k0)^3 v_g t / 6].
FidelityPoint analytic_fidelity(const PacketSpec& spec, double v_g, double t,
                                const LatticeParams& params);

}  // namespace boundpair
