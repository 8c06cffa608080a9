#include <doctest.h>

#include <cmath>
#include <memory>

#include "boundpair/bethe.hpp"
#include "boundpair/errors.hpp"
#include "boundpair/spectral.hpp"
#include "boundpair/wavepacket.hpp"
#include "helpers.hpp"

using namespace boundpair;

namespace {

DensityProfile profile_of(std::vector<double> occ) { return DensityProfile{std::move(occ), 0.0}; }

double linear_std(const DensityProfile& d) {
  double w = 0.0, m1 = 0.0, m2 = 0.0;
  for (int i = 0; i < d.n_sites(); ++i) {
    w += d.occupancy[i];
    m1 += (i + 1) * d.occupancy[i];
    m2 += double(i + 1) * (i + 1) * d.occupancy[i];
  }
  m1 /= w;
  return std::sqrt(m2 / w - m1 * m1);
}

}  // namespace

TEST_CASE("circular centre and width") {
  std::vector<double> delta(31, 0.0);
  delta[6] = 1.0;
  CHECK(circular_center(profile_of(delta)) == doctest::Approx(7.0));
  CHECK(packet_width(profile_of(delta)) == doctest::Approx(0.0));
  CHECK_THROWS_AS(circular_center(profile_of(std::vector<double>(31, 0.0))), DomainError);

  const DensityProfile g = density_profile(make_sp_packet({0.3, 150.0, 2.0 / 15.0}, 301));
  CHECK(std::abs(circular_center(g) - 150.0) < 1e-9);
  CHECK(packet_width(g) == doctest::Approx(linear_std(g)).epsilon(1e-6));
  CHECK(packet_width(g) == doctest::Approx(15.0 / 2.0 / std::sqrt(2.0)).epsilon(1e-6));

  for (int d : {1, 40, 200, -7}) {
    std::vector<double> shifted(301);
    for (int i = 0; i < 301; ++i) shifted[((i + d) % 301 + 301) % 301] = g.occupancy[i];
    const double moved = circular_center(profile_of(shifted));
    CHECK(std::abs(circular_difference(moved - 150.0 - d, 301)) < 1e-9);
    CHECK(packet_width(profile_of(shifted)) == doctest::Approx(packet_width(g)).epsilon(1e-12));
  }
  // wrapped packet straddling site 1
  const DensityProfile w = density_profile(make_sp_packet({0.0, 2.0, 2.0 / 15.0}, 301));
  CHECK(std::abs(circular_center(w) - 2.0) < 1e-9);
  CHECK(circular_difference(299.0, 301) == doctest::Approx(-2.0));
  CHECK(circular_difference(150.5, 301) == doctest::Approx(150.5));
}

TEST_CASE("single-particle packet") {
  const PacketSpec spec{kPi / 2, 60.0, 2.0 / 15.0};
  const SingleParticleState psi = make_sp_packet(spec, 301);
  CHECK(psi.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(make_sp_packet({0.0, 10.0, 0.05}, 101), DomainError);

  SUBCASE("momentum peak") {
    int best = 0;
    double best_w = 0.0;
    for (int m = 0; m < 301; ++m) {
      Complex acc{0.0, 0.0};
      for (int j = 1; j <= 301; ++j) acc += std::polar(1.0, -2 * kPi * m * j / 301) * psi.amplitudes[j - 1];
      if (std::norm(acc) > best_w) {
        best_w = std::norm(acc);
        best = m;
      }
    }
    CHECK(std::abs(principal_angle(2 * kPi * best / 301 - kPi / 2)) <= 2 * kPi / 301);
  }
  SUBCASE("free motion at 2 kappa sin k0") {
    const Propagator ring(std::make_shared<const Hamiltonian>(build_ring_hamiltonian(301, 1.0)));
    const SingleParticleState later{ring.evolve(psi.amplitudes, 10.0)};
    const double moved = circular_difference(circular_center(density_profile(later)) - 60.0, 301);
    CHECK(std::abs(moved - 20.0) < 0.2);
  }
  SUBCASE("open chain uses linear distance") {
    const SingleParticleState open = make_sp_packet({kPi / 2, 3.0, 0.4}, 41, Geometry::kOpenChain);
    CHECK(std::abs(open.amplitudes[40]) < 1e-10);
  }
}

TEST_CASE("bound-pair packet construction") {
  const LatticeParams p(61, 1.0, 5.0);
  const std::vector<BoundState> band = bound_band(p);
  const PacketSpec spec{linear_point(p).k0, 30.0, 0.4};
  const PairState phi = make_bp_packet(spec, band, 61);
  CHECK(phi.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-10));

  const double omega = packet_normalization(spec, 61);
  const std::vector<Complex> proj = project_onto_band(phi, band);
  for (std::size_t i = 0; i < band.size(); ++i) {
    const double d = principal_angle(band[i].momentum.k - spec.k0);
    CHECK(std::abs(proj[i]) == doctest::Approx(std::exp(-d * d / (2 * spec.width_param * spec.width_param)) /
                                               std::sqrt(omega)).epsilon(1e-9));
  }
  CHECK(std::abs(band_leakage(phi, band)) < 1e-12);

  const DensityProfile d = density_profile(phi);
  CHECK(d.total() == doctest::Approx(2.0).epsilon(1e-12));
  // the basis phase puts the density centre half a site below N_c
  CHECK(std::abs(circular_center(d) - 29.5) < 1e-6);
  int peaks = 0;
  for (int i = 0; i < 61; ++i) {
    const double prev = d.occupancy[(i + 60) % 61];
    const double next = d.occupancy[(i + 1) % 61];
    if (d.occupancy[i] > prev && d.occupancy[i] > next && d.occupancy[i] > 1e-6) ++peaks;
  }
  CHECK(peaks == 1);

  CHECK(make_bp_packet(spec, p).amplitudes.isApprox(phi.amplitudes, 1e-12));
  CHECK_THROWS_AS(make_bp_packet(spec, p.with_interaction(0.0)), DomainError);
}

TEST_CASE("bound-pair eigenstate is an eigenvector of the pair Hamiltonian") {
  const LatticeParams p(21, 1.0, -2.0);
  const Hamiltonian h = build_full_pair_hamiltonian(p);
  for (int m : {1, 7, 21}) {
    const BoundState b = bound_state(MomentumIndex::on_grid(m, 21), p);
    const PairState psi = bound_eigenstate(b, 21);
    CHECK(psi.amplitudes.norm() == doctest::Approx(1.0).epsilon(1e-12));
    CHECK((h.apply(psi.amplitudes) - b.energy * psi.amplitudes).norm() < 1e-10);
    CHECK(std::abs(translation_expectation(psi) - std::polar(1.0, -b.momentum.k)) < 1e-10);
  }
}

TEST_CASE("bound-pair packet is translation covariant") {
  const LatticeParams p(41, 1.0, 3.0);
  const std::vector<BoundState> band = bound_band(p);
  const PacketSpec base{2.0, 10.3, 0.5};
  const PairState a = make_bp_packet(base, band, 41);
  for (int d : {1, 5, -3, 40}) {
    PacketSpec moved = base;
    moved.center += d;
    const PairState b = make_bp_packet(moved, band, 41);
    const PairState shifted = translate(a, d);
    const Complex phase = shifted.amplitudes.dot(b.amplitudes);
    CHECK(std::abs(phase) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK((b.amplitudes - phase * shifted.amplitudes).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("bound-pair packet stays in the bound band") {
  const LatticeParams p(51, 1.0, 5.0);
  const std::vector<BoundState> band = bound_band(p);
  const PairState phi = make_bp_packet({linear_point(p).k0, 25.0, 0.5}, band, 51);
  const Propagator prop(std::make_shared<const Hamiltonian>(build_full_pair_hamiltonian(p)));
  for (double t : {1.0, 10.0, 40.0}) {
    const PairState later{51, prop.evolve(phi.amplitudes, t)};
    CHECK(std::abs(band_leakage(later, band)) < 1e-10);
  }
}

TEST_CASE("packets spread least at the linear point") {
  const LatticeParams p(151, 1.0, 5.0);
  const std::vector<BoundState> band = bound_band(p);
  const Propagator prop(std::make_shared<const Hamiltonian>(build_full_pair_hamiltonian(p)));
  const double k0 = linear_point(p).k0;
  auto growth = [&](double k) {
    const PairState phi = make_bp_packet({k, 76.0, 2.0 / 15.0}, band, 151);
    const double t = 30.0 / std::abs(band_slope(k, p));
    const PairState later{151, prop.evolve(phi.amplitudes, t)};
    return packet_width(density_profile(later)) / packet_width(density_profile(phi)) - 1.0;
  };
  const double at_k0 = growth(k0);
  CHECK(at_k0 < growth(k0 - 0.5));
  CHECK(at_k0 < growth(k0 + 0.5));
}

TEST_CASE("density profiles") {
  const int n = 7;
  PairState doublon{n, ComplexVector::Zero(pair_dimension(n))};
  doublon.amplitudes[pair_basis_index(4, 4, n)] = 1.0;
  const DensityProfile d1 = density_profile(doublon);
  CHECK(d1.occupancy[3] == doctest::Approx(2.0));
  CHECK(d1.total() == doctest::Approx(2.0));

  PairState split{n, ComplexVector::Zero(pair_dimension(n))};
  split.amplitudes[pair_basis_index(1, 2, n)] = 1.0;
  const DensityProfile d2 = density_profile(split);
  CHECK(d2.occupancy[0] == doctest::Approx(1.0));
  CHECK(d2.occupancy[1] == doctest::Approx(1.0));

  const PairState random{n, testing_util::random_state(pair_dimension(n), 2)};
  const DensityProfile d3 = density_profile(random, 1.5);
  CHECK(d3.total() == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(d3.time == 1.5);
  for (double x : d3.occupancy) CHECK(x >= -1e-12);

  const HardcoreState hc{n, testing_util::random_state(hardcore_dimension(n), 3)};
  const HardcoreProfiles hp = density_profile(hc);
  CHECK(hp.sp.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hp.bp.total() == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(hp.physical_bp().total() == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("hardcore product state") {
  const LatticeParams p(201, 1.0, 20.0);
  const PacketSpec sp{kPi / 2, 30.0, 2.0 / 15.0};
  const PacketSpec bp{0.0, 101.0, 2.0 / 15.0};
  const HardcoreState s = make_hardcore_product(sp, bp, p);
  CHECK(std::abs(s.amplitudes.norm() - 1.0) < 1e-12);

  const HardcoreProfiles prof = density_profile(s);
  const DensityProfile free_sp = density_profile(make_sp_packet(sp, 201));
  for (int i = 0; i < 201; ++i) CHECK(std::abs(prof.sp.occupancy[i] - free_sp.occupancy[i]) < 1e-6);
  CHECK(std::abs(circular_center(prof.bp) - 101.0) < 1e-3);

  CHECK_THROWS_AS(make_hardcore_product(sp, {0.0, 80.0, 2.0 / 15.0}, p), PreconditionError);
}
