#pragma once

// Gaussian single-particle (SP) and bound-pair (BP) packets and the density
// measurements used to track them.

#include <vector>

#include "boundpair/model.hpp"

namespace boundpair {

struct DensityProfile {
  std::vector<double> occupancy;  // <n_i>, slot site - 1
  double time = 0.0;

  int n_sites() const { return static_cast<int>(occupancy.size()); }
  double total() const;
};

// SP and BP marginals of a HardcoreState. The BP marginal counts the pair
// site with weight 1; physical_bp() doubles it for comparison with pair
// densities.
struct HardcoreProfiles {
  DensityProfile sp;
  DensityProfile bp;

  DensityProfile physical_bp() const;
};

enum class Geometry { kRing, kOpenChain };

// psi_j ~ exp(-(alpha^2 / 2) d_j^2 + i k0 j), normalized, with d_j the
// distance from the centre (circular on a ring). Throws DomainError if alpha
// is not resolvable.
SingleParticleState make_sp_packet(const PacketSpec& spec, int n_sites,
                                   Geometry geometry = Geometry::kRing);

// Real-space form of the pair eigenstate |psi_k> built from a bound state.
PairState bound_eigenstate(const BoundState& state, int n_sites);

// Gaussian superposition of bound-band eigenstates,
//   |Phi> = Omega^{-1/2} sum_k exp(-(k-k0)^2/(2 alpha^2) - i N_c (k-k0)) |psi_k>,
// with principal differences. The basis phase e^{ik(r+1)/2} places the
// density centre at N_c - 1/2.
PairState make_bp_packet(const PacketSpec& spec, const LatticeParams& params, int jobs = 1);
PairState make_bp_packet(const PacketSpec& spec, const std::vector<BoundState>& band, int n_sites);

// <psi_k | state> for every bound state in `band`.
std::vector<Complex> project_onto_band(const PairState& state, const std::vector<BoundState>& band);
// 1 - sum_k |<psi_k|state>|^2 / <state|state>
double band_leakage(const PairState& state, const std::vector<BoundState>& band);

// Product of an SP packet and a BP (b-tilde) packet with the shared-site
// amplitudes removed and the result renormalized. Throws PreconditionError
// unless the centres are more than 4 (1/alpha_sp + 1/alpha_bp) apart around
// the ring and the removed weight is below 1e-6.
HardcoreState make_hardcore_product(const PacketSpec& sp_spec, const PacketSpec& bp_spec,
                                    const LatticeParams& params);

DensityProfile density_profile(const PairState& state, double time = 0.0);
DensityProfile density_profile(const SingleParticleState& state, double time = 0.0);
HardcoreProfiles density_profile(const HardcoreState& state, double time = 0.0);

// N / (2 pi) arg sum_i w_i e^{2 pi i site/N}, mapped to [1, N + 1).
// Throws DomainError for zero total weight.
double circular_center(const DensityProfile& d);
// Circular standard deviation sqrt(-2 ln R) N / (2 pi), R the mean resultant
// length; equals sigma for a wrapped Gaussian.
double packet_width(const DensityProfile& d);

// x mapped into (-n/2, n/2]
double circular_difference(double x, int n_sites);

}  // namespace boundpair
