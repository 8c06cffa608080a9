#include "boundpair/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "boundpair/errors.hpp"
#include "boundpair/spectral.hpp"

namespace boundpair {
namespace {

int wrap_site(int site, int n) {
  int s = (site - 1) % n;
  if (s < 0) s += n;
  return s + 1;
}

// Visits every (pair index, amplitude) of |psi_k> in real space.
template <class Visit>
void for_each_eigenstate_entry(const BoundState& state, int n_sites, Visit&& visit) {
  const double k = state.momentum.k;
  const double inv_sqrt_n = 1.0 / std::sqrt(static_cast<double>(n_sites));
  const int max_r = std::min<int>(static_cast<int>(state.rel_amplitudes.size()) - 1, (n_sites - 1) / 2);
  for (int j = 1; j <= n_sites; ++j) {
    const double kj = k * j;
    for (int r = 0; r <= max_r; ++r) {
      const double f = state.rel_amplitudes[r];
      if (f == 0.0) continue;
      const int other = wrap_site(j + r, n_sites);
      const Index idx = pair_basis_index(std::min(j, other), std::max(j, other), n_sites);
      visit(idx, f * inv_sqrt_n * std::polar(1.0, kj + 0.5 * k * (r + 1)));
    }
  }
}

}  // namespace

double DensityProfile::total() const {
  return std::accumulate(occupancy.begin(), occupancy.end(), 0.0);
}

DensityProfile HardcoreProfiles::physical_bp() const {
  DensityProfile out = bp;
  for (double& x : out.occupancy) x *= 2.0;
  return out;
}

double circular_difference(double x, int n_sites) {
  const double n = n_sites;
  double r = std::remainder(x, n);
  if (r <= -0.5 * n) r += n;
  return r;
}

SingleParticleState make_sp_packet(const PacketSpec& spec, int n_sites, Geometry geometry) {
  check_resolvable(spec, n_sites);
  const double a2 = spec.width_param * spec.width_param;
  SingleParticleState out{ComplexVector(n_sites)};
  for (int j = 1; j <= n_sites; ++j) {
    const double d = geometry == Geometry::kRing ? circular_difference(j - spec.center, n_sites)
                                                 : j - spec.center;
    out.amplitudes[j - 1] = std::exp(-0.5 * a2 * d * d) * std::polar(1.0, spec.k0 * j);
  }
  out.amplitudes /= out.amplitudes.norm();
  return out;
}

PairState bound_eigenstate(const BoundState& state, int n_sites) {
  PairState out{n_sites, ComplexVector::Zero(pair_dimension(n_sites))};
  for_each_eigenstate_entry(state, n_sites, [&](Index idx, Complex amp) { out.amplitudes[idx] += amp; });
  return out;
}

PairState make_bp_packet(const PacketSpec& spec, const LatticeParams& params, int jobs) {
  check_resolvable(spec, params.n_sites());
  return make_bp_packet(spec, bound_band(params, jobs), params.n_sites());
}

PairState make_bp_packet(const PacketSpec& spec, const std::vector<BoundState>& band, int n_sites) {
  check_resolvable(spec, n_sites);
  const double a2 = spec.width_param * spec.width_param;
  const double inv_sqrt_omega = 1.0 / std::sqrt(packet_normalization(spec, n_sites));
  PairState out{n_sites, ComplexVector::Zero(pair_dimension(n_sites))};
  for (const BoundState& state : band) {
    const double d = principal_angle(state.momentum.k - spec.k0);
    const Complex g = inv_sqrt_omega * std::exp(-0.5 * d * d / a2) * std::polar(1.0, -spec.center * d);
    for_each_eigenstate_entry(state, n_sites, [&](Index idx, Complex amp) { out.amplitudes[idx] += g * amp; });
  }
  return out;
}

std::vector<Complex> project_onto_band(const PairState& state, const std::vector<BoundState>& band) {
  std::vector<Complex> out;
  out.reserve(band.size());
  for (const BoundState& b : band) {
    Complex acc{0.0, 0.0};
    for_each_eigenstate_entry(b, state.n_sites, [&](Index idx, Complex amp) {
      acc += std::conj(amp) * state.amplitudes[idx];
    });
    out.push_back(acc);
  }
  return out;
}

double band_leakage(const PairState& state, const std::vector<BoundState>& band) {
  double captured = 0.0;
  for (const Complex& c : project_onto_band(state, band)) captured += std::norm(c);
  return 1.0 - captured / state.amplitudes.squaredNorm();
}

HardcoreState make_hardcore_product(const PacketSpec& sp_spec, const PacketSpec& bp_spec,
                                    const LatticeParams& params) {
  const int n = params.n_sites();
  const double separation = std::abs(circular_difference(sp_spec.center - bp_spec.center, n));
  const double required = 4.0 * (1.0 / sp_spec.width_param + 1.0 / bp_spec.width_param);
  if (!(separation > required)) {
    throw PreconditionError("SP and BP packets overlap: separation " + std::to_string(separation) +
                            " <= " + std::to_string(required));
  }
  const SingleParticleState sp = make_sp_packet(sp_spec, n);
  const SingleParticleState bp = make_sp_packet(bp_spec, n);

  HardcoreState out{n, ComplexVector(hardcore_dimension(n))};
  double removed = 0.0;
  for (int s = 1; s <= n; ++s) removed += std::norm(sp.amplitudes[s - 1]) * std::norm(bp.amplitudes[s - 1]);
  if (removed > 1e-6) {
    throw PreconditionError("exclusion renormalization removes " + std::to_string(removed) + " of the weight");
  }
  for (Index idx = 0; idx < out.amplitudes.size(); ++idx) {
    const auto [s, b] = hardcore_basis_sites(idx, n);
    out.amplitudes[idx] = sp.amplitudes[s - 1] * bp.amplitudes[b - 1];
  }
  out.amplitudes /= out.amplitudes.norm();
  return out;
}

DensityProfile density_profile(const PairState& state, double time) {
  DensityProfile d{std::vector<double>(state.n_sites, 0.0), time};
  for (Index idx = 0; idx < state.amplitudes.size(); ++idx) {
    const double p = std::norm(state.amplitudes[idx]);
    const auto [i, j] = pair_basis_sites(idx, state.n_sites);
    d.occupancy[i - 1] += p;
    d.occupancy[j - 1] += p;
  }
  return d;
}

DensityProfile density_profile(const SingleParticleState& state, double time) {
  DensityProfile d{std::vector<double>(state.n_sites()), time};
  for (int s = 0; s < state.n_sites(); ++s) d.occupancy[s] = std::norm(state.amplitudes[s]);
  return d;
}

HardcoreProfiles density_profile(const HardcoreState& state, double time) {
  HardcoreProfiles out{{std::vector<double>(state.n_sites, 0.0), time},
                       {std::vector<double>(state.n_sites, 0.0), time}};
  for (Index idx = 0; idx < state.amplitudes.size(); ++idx) {
    const double p = std::norm(state.amplitudes[idx]);
    const auto [s, b] = hardcore_basis_sites(idx, state.n_sites);
    out.sp.occupancy[s - 1] += p;
    out.bp.occupancy[b - 1] += p;
  }
  return out;
}

namespace {

struct Resultant {
  Complex sum;
  double weight;
};

Resultant resultant(const DensityProfile& d) {
  const int n = d.n_sites();
  Resultant r{{0.0, 0.0}, 0.0};
  for (int s = 1; s <= n; ++s) {
    r.sum += d.occupancy[s - 1] * std::polar(1.0, 2.0 * kPi * s / n);
    r.weight += d.occupancy[s - 1];
  }
  if (!(r.weight > 0.0)) throw DomainError("density profile has no weight");
  return r;
}

}  // namespace

double circular_center(const DensityProfile& d) {
  const Resultant r = resultant(d);
  const int n = d.n_sites();
  double c = std::arg(r.sum) * n / (2.0 * kPi);
  if (c < 1.0) c += n;
  return c;
}

double packet_width(const DensityProfile& d) {
  const Resultant r = resultant(d);
  const double length = std::min(1.0, std::abs(r.sum) / r.weight);
  return std::sqrt(-2.0 * std::log(length)) * d.n_sites() / (2.0 * kPi);
}

}  // namespace boundpair
