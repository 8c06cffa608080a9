#include "boundpair/experiments.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <memory>
#include <stdexcept>
#include <string>

#include "boundpair/bethe.hpp"
#include "boundpair/errors.hpp"
#include "boundpair/spectral.hpp"
#include "boundpair/wavepacket.hpp"

namespace boundpair {

// ---- RunOutput --------------------------------------------------------------

void RunOutput::set(std::string key, double value) {
  for (auto& [k, v] : summary) {
    if (k == key) {
      v = value;
      return;
    }
  }
  summary.emplace_back(std::move(key), value);
}

void RunOutput::echo(std::string key, ProvenanceValue value) {
  provenance.emplace_back(std::move(key), std::move(value));
}

bool RunOutput::has(std::string_view key) const {
  return std::any_of(summary.begin(), summary.end(), [&](const auto& kv) { return kv.first == key; });
}

double RunOutput::value(std::string_view key) const {
  for (const auto& [k, v] : summary) {
    if (k == key) return v;
  }
  throw std::out_of_range("no summary entry '" + std::string(key) + "'");
}

const Table& RunOutput::table(std::string_view name) const {
  for (const auto& t : tables) {
    if (t.name == name) return t;
  }
  throw std::out_of_range("no table '" + std::string(name) + "'");
}

namespace {

std::string profile_name(int index) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "profile_t%03d", index);
  return buf;
}

Table profile_table(int index, const std::vector<double>& sp, const std::vector<double>& bp) {
  Table t{profile_name(index), {"site", "n_sp", "n_bp"}, {}};
  t.rows.reserve(bp.size());
  for (std::size_t i = 0; i < bp.size(); ++i) {
    t.rows.push_back({static_cast<double>(i + 1), sp.empty() ? 0.0 : sp[i], bp[i]});
  }
  return t;
}

void echo_lattice(RunOutput& out, const LatticeParams& params) {
  out.echo("sites", static_cast<std::int64_t>(params.n_sites()));
  out.echo("kappa", params.hopping());
  out.echo("interaction", params.interaction());
}

void echo_packet(RunOutput& out, const std::string& prefix, const PacketSpec& spec) {
  out.echo(prefix + "k0", spec.k0);
  out.echo(prefix + "center", spec.center);
  out.echo(prefix + "alpha", spec.width_param);
}

// Centre positions tracked through a sequence of snapshots without losing
// whole turns around the ring.
class UnwrappedCenter {
 public:
  explicit UnwrappedCenter(int n_sites) : n_(n_sites) {}
  double update(double raw) {
    if (!started_) {
      value_ = raw;
      started_ = true;
    } else {
      value_ += circular_difference(raw - last_raw_, n_);
    }
    last_raw_ = raw;
    return value_;
  }

 private:
  int n_;
  bool started_ = false;
  double last_raw_ = 0.0;
  double value_ = 0.0;
};

}  // namespace

// ---- band scan --------------------------------------------------------------

RunOutput band_scan(const LatticeParams& params, int jobs) {
  const int n = params.n_sites();
  const std::vector<BoundState> band = bound_band(params, jobs);

  RunOutput out;
  out.experiment = "band";
  Table table{"band", {"k", "eps_num", "eps_ana", "lambda", "cont_lo", "cont_hi"}, {}};
  double worst = 0.0;
  for (const BoundState& b : band) {
    const double k = b.momentum.k;
    const double analytic = band_energy(k, params);
    const ContinuumEdges edges = continuum_edges(k, params);
    worst = std::max(worst, std::abs(b.energy - analytic));
    table.rows.push_back({k, b.energy, analytic, pair_size(k, params), edges.lower, edges.upper});
  }
  out.tables.push_back(std::move(table));

  const BandDescriptor d = linear_point(params);
  out.set("k0", d.k0);
  out.set("v_g", d.v_g);
  out.set("lambda_k0", d.lambda_k0);
  out.set("eta", d.eta);
  out.set("max_band_deviation", worst);
  out.set("rows", n);
  echo_lattice(out, params);
  return out;
}

// ---- packet evolution -------------------------------------------------------

RunOutput packet_evolution(const LatticeParams& params, const PacketSpec& spec, double tau, int jobs) {
  const int n = params.n_sites();
  check_resolvable(spec, n);
  const std::vector<BoundState> band = bound_band(params, jobs);
  const PairState initial = make_bp_packet(spec, band, n);

  auto h = std::make_shared<const Hamiltonian>(build_full_pair_hamiltonian(params));
  const Propagator propagator(h);
  const double v_g = band_slope(spec.k0, params);

  // sub-steps keep each centre move well below half the ring
  const int substeps = std::max(1, static_cast<int>(std::ceil(std::abs(v_g * tau) / (0.25 * n))));
  const DensityProfile d0 = density_profile(initial, 0.0);
  UnwrappedCenter center(n);
  const double c0 = center.update(circular_center(d0));
  PairState state = initial;
  for (int s = 1; s <= substeps; ++s) {
    state.amplitudes = propagator.evolve(state.amplitudes, tau / substeps);
    center.update(circular_center(density_profile(state)));
  }
  const DensityProfile dt = density_profile(state, tau);
  const double ct = center.update(circular_center(dt));

  const double w0 = packet_width(d0);
  const double wt = packet_width(dt);
  const double e0 = h->expectation(initial.amplitudes).real();
  const double et = h->expectation(state.amplitudes).real();

  RunOutput out;
  out.experiment = "packet";
  out.tables.push_back(profile_table(0, {}, d0.occupancy));
  out.tables.push_back(profile_table(1, {}, dt.occupancy));
  out.set("k0", spec.k0);
  out.set("v_g", v_g);
  out.set("tau", tau);
  out.set("predicted_displacement", v_g * tau);
  out.set("displacement", ct - c0);
  out.set("center_0", circular_center(d0));
  out.set("center_tau", circular_center(dt));
  out.set("width_0", w0);
  out.set("width_tau", wt);
  out.set("width_growth", wt / w0 - 1.0);
  out.set("leakage", band_leakage(state, band));
  out.set("norm_drift", std::abs(state.amplitudes.norm() - initial.amplitudes.norm()));
  out.set("energy_drift", std::abs(et - e0));
  out.set("momentum_drift", std::abs(translation_expectation(state) - translation_expectation(initial)));
  echo_lattice(out, params);
  echo_packet(out, "", spec);
  out.echo("tau", tau);
  out.echo("propagator", std::string(propagator.method() == PropagationMethod::kSpectral ? "spectral" : "chebyshev"));
  return out;
}

// ---- fidelity ---------------------------------------------------------------

RunOutput fidelity_scan(const LatticeParams& params, const PacketSpec& spec,
                        const std::vector<double>& times) {
  const int n = params.n_sites();
  check_resolvable(spec, n);
  const double v = band_slope(spec.k0, params);
  const double e0 = band_energy(spec.k0, params);
  const double a2 = spec.width_param * spec.width_param;

  std::vector<double> weight(n);
  std::vector<double> detuning(n);  // eps_k - (eps_k0 + v (k - k0))
  double omega = 0.0;
  for (int m = 1; m <= n; ++m) {
    const double k = 2.0 * kPi * m / n;
    const double d = principal_angle(k - spec.k0);
    weight[m - 1] = std::exp(-d * d / a2);
    detuning[m - 1] = band_energy(k, params) - e0 - v * d;
    omega += weight[m - 1];
  }

  RunOutput out;
  out.experiment = "fidelity";
  Table table{"fidelity", {"t", "ell", "F_exact", "F_cubic"}, {}};
  double worst = 0.0;
  for (double t : times) {
    Complex acc{0.0, 0.0};
    for (int m = 0; m < n; ++m) acc += weight[m] * std::polar(1.0, -detuning[m] * t);
    const double exact = std::abs(acc) / omega;
    const double cubic = analytic_fidelity(spec, v, t, params).value;
    worst = std::max(worst, std::abs(exact - cubic));
    table.rows.push_back({t, v * t, exact, cubic});
  }
  out.set("k0", spec.k0);
  out.set("v_g", v);
  out.set("max_abs_difference", worst);
  if (!table.rows.empty()) {
    out.set("ell_final", table.rows.back()[1]);
    out.set("F_exact_final", table.rows.back()[2]);
    out.set("F_cubic_final", table.rows.back()[3]);
  }
  out.tables.push_back(std::move(table));
  echo_lattice(out, params);
  echo_packet(out, "", spec);
  out.echo("samples", static_cast<std::int64_t>(times.size()));
  return out;
}

// ---- SP / BP scattering -----------------------------------------------------

RunOutput scattering_run(const LatticeParams& params, const PacketSpec& sp_spec,
                         const PacketSpec& bp_spec, double swap_amplitude,
                         const ScatterOptions& options) {
  const int n = params.n_sites();
  const double kappa = params.hopping();
  if (params.interaction() == 0.0) throw DomainError("the hardcore SP/BP model needs U != 0");
  const double bp_hop = 4.0 * kappa * kappa / params.interaction();

  const HardcoreState initial = make_hardcore_product(sp_spec, bp_spec, params);

  // free group velocities: SP band -2 kappa cos k, BP band 2 J cos k
  const double v_sp = 2.0 * kappa * std::sin(sp_spec.k0);
  const double v_bp = -2.0 * bp_hop * std::sin(bp_spec.k0);
  const double v_rel = v_sp - v_bp;
  if (std::abs(v_rel) < 1e-9) throw PreconditionError("SP and BP packets never meet");
  const double dir = v_rel > 0.0 ? 1.0 : -1.0;

  double gap = std::fmod(dir * (bp_spec.center - sp_spec.center), static_cast<double>(n));
  if (gap < 0.0) gap += n;
  if (gap >= 0.5 * n) throw PreconditionError("SP must approach the BP across the shorter arc");

  const double clearance = 2.0 * (1.0 / sp_spec.width_param + 1.0 / bp_spec.width_param);
  const double lead = 0.25 * n + 0.5 * clearance;
  if (lead < clearance + 10.0 || n - 2.0 * lead < clearance) {
    throw PreconditionError("ring too small for the packets to separate after scattering");
  }
  const double speed = std::abs(v_rel);
  const double t_before = (gap - clearance) / speed;
  const double t_after = (gap + clearance) / speed;
  const double t_stop = options.stop_time > 0.0 ? options.stop_time : (gap + lead) / speed;
  if (t_stop <= t_after) throw PreconditionError("stop time ends before the SP clears the BP");

  // stroboscopic grid dense enough to unwrap the SP centre
  const int strobe = std::max(options.snapshots,
                              static_cast<int>(std::ceil(std::abs(v_sp) * t_stop / (0.125 * n))));
  struct Sample {
    double t;
    int profile;  // -1: bookkeeping only
  };
  std::vector<Sample> samples;
  for (int m = 0; m <= strobe; ++m) samples.push_back({t_stop * m / strobe, m});
  samples.push_back({t_before, -1});
  samples.push_back({t_after, -1});
  std::stable_sort(samples.begin(), samples.end(), [](const Sample& a, const Sample& b) { return a.t < b.t; });

  auto h = std::make_shared<const Hamiltonian>(build_hardcore_hamiltonian(params, swap_amplitude));
  const Propagator propagator(h);

  RunOutput out;
  out.experiment = "scatter";
  Table snapshots{"snapshots", {"index", "t", "sp_center", "bp_center"}, {}};

  UnwrappedCenter sp_center(n);
  UnwrappedCenter bp_center(n);
  const Complex momentum0 = translation_expectation(initial);
  double norm_drift = 0.0;
  double momentum_drift = 0.0;
  double sp_at_before = 0.0;
  double sp_at_after = 0.0;
  double sp_initial = 0.0;
  HardcoreState state = initial;
  double now = 0.0;
  for (const Sample& s : samples) {
    if (s.t > now) {
      state.amplitudes = propagator.evolve(state.amplitudes, s.t - now);
      now = s.t;
    }
    const HardcoreProfiles prof = density_profile(state, now);
    const double csp = sp_center.update(circular_center(prof.sp));
    const double cbp = bp_center.update(circular_center(prof.bp));
    norm_drift = std::max(norm_drift, std::abs(state.amplitudes.norm() - 1.0));
    momentum_drift = std::max(momentum_drift, std::abs(translation_expectation(state) - momentum0));
    if (s.t == 0.0 && s.profile == 0) sp_initial = csp;
    if (s.profile < 0 && s.t == t_before) sp_at_before = csp;
    if (s.profile < 0 && s.t == t_after) sp_at_after = csp;
    if (s.profile >= 0) {
      out.tables.push_back(profile_table(s.profile, prof.sp.occupancy, prof.bp.occupancy));
      snapshots.rows.push_back({static_cast<double>(s.profile), now, csp, cbp});
    }
  }
  const double sp_final = snapshots.rows.back()[2];

  double transmitted = 0.0;
  for (Index idx = 0; idx < state.amplitudes.size(); ++idx) {
    const auto [sp, bp] = hardcore_basis_sites(idx, n);
    int rel = (sp - bp) % n;
    if (rel < 0) rel += n;
    const bool ahead = dir > 0.0 ? rel < 0.5 * n : rel > 0.5 * n;
    if (ahead) transmitted += std::norm(state.amplitudes[idx]);
  }
  transmitted /= state.amplitudes.squaredNorm();

  // where the BP would be without the SP
  const SingleParticleState bp_free0 = make_sp_packet(bp_spec, n);
  const Propagator free_bp(std::make_shared<const Hamiltonian>(build_ring_hamiltonian(n, -bp_hop)));
  const SingleParticleState bp_free{free_bp.evolve(bp_free0.amplitudes, t_stop)};
  const double bp_before = circular_center(density_profile(bp_free));
  const double bp_after = circular_center(density_profile(state).bp);

  const double speed_before = (sp_at_before - sp_initial) / t_before;
  const double speed_after = (sp_final - sp_at_after) / (t_stop - t_after);

  out.set("swap_amplitude", swap_amplitude);
  out.set("shift", circular_difference(bp_after - bp_before, n));
  out.set("transmission", transmitted);
  out.set("reflection", 1.0 - transmitted);
  out.set("bp_center_initial", circular_center(density_profile(initial).bp));
  out.set("bp_center_before", bp_before);
  out.set("bp_center_after", bp_after);
  out.set("sp_speed_before", speed_before);
  out.set("sp_speed_after", speed_after);
  out.set("sp_speed_change", std::abs(speed_after - speed_before) / std::abs(speed_before));
  out.set("t_before", t_before);
  out.set("t_after", t_after);
  out.set("t_stop", t_stop);
  out.set("norm_drift", norm_drift);
  out.set("momentum_drift", momentum_drift);
  out.tables.push_back(std::move(snapshots));

  echo_lattice(out, params);
  echo_packet(out, "sp_", sp_spec);
  echo_packet(out, "bp_", bp_spec);
  out.echo("swap_amplitude", swap_amplitude);
  out.echo("stop_rule", std::string(options.stop_time > 0.0
                                        ? "fixed"
                                        : "transmitted lobe N/4 + (1/alpha_sp + 1/alpha_bp) ahead of the BP"));
  out.echo("t_stop", t_stop);
  out.echo("snapshots", static_cast<std::int64_t>(strobe));
  return out;
}

// ---- charge-qubit switch ----------------------------------------------------

namespace {

struct SinglePass {
  double transmission = 0.0;
  double reflection = 0.0;
  Eigen::Matrix2cd rho = Eigen::Matrix2cd::Zero();
  double reflected_k_weighted = 0.0;  // sum q |psi(q)|^2 over the reflected lobe
  double reflected_k_norm = 0.0;
  std::vector<double> sp_density;
  std::vector<double> bp_density;
  double norm_drift = 0.0;
};

SinglePass pass_packet(const SwitchConfig& cfg, const SwitchBasis& basis, const Propagator& propagator,
                       const SingleParticleState& packet, const Complex (&qubit)[2], double t_stop) {
  const int m = cfg.chain_length();
  const int s = cfg.qubit_site();
  const int bp_sites[2] = {cfg.left_site(), cfg.right_site()};

  ComplexVector psi = ComplexVector::Zero(basis.dimension());
  for (int b = 0; b < 2; ++b) {
    for (int x = 1; x <= m; ++x) {
      if (x != bp_sites[b]) psi[basis.index(x, bp_sites[b])] = packet.amplitudes[x - 1] * qubit[b];
    }
  }
  psi /= psi.norm();
  const ComplexVector out = propagator.evolve(psi, t_stop);

  SinglePass r;
  r.norm_drift = std::abs(out.norm() - 1.0);
  r.sp_density.assign(m, 0.0);
  r.bp_density.assign(m, 0.0);
  for (Index idx = 0; idx < out.size(); ++idx) {
    const auto [x, b] = basis.sites(idx);
    const double p = std::norm(out[idx]);
    r.sp_density[x - 1] += p;
    r.bp_density[b - 1] += p;
    if (x > s + 3) r.transmission += p;
    if (x < s) r.reflection += p;
  }
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      Complex acc{0.0, 0.0};
      for (int x = 1; x <= m; ++x) {
        if (x == bp_sites[0] || x == bp_sites[1]) continue;
        acc += out[basis.index(x, bp_sites[a])] * std::conj(out[basis.index(x, bp_sites[b])]);
      }
      r.rho(a, b) = acc;
    }
  }
  // momentum content of the reflected lobe (sites 1 .. s-1)
  const int len = s - 1;
  for (int b = 0; b < 2; ++b) {
    for (int q = 0; q < len; ++q) {
      const double kq = principal_angle(2.0 * kPi * q / len);
      Complex acc{0.0, 0.0};
      for (int x = 1; x <= len; ++x) acc += std::polar(1.0, -kq * x) * out[basis.index(x, bp_sites[b])];
      const double w = std::norm(acc) / len;
      r.reflected_k_weighted += kq * w;
      r.reflected_k_norm += w;
    }
  }
  return r;
}

}  // namespace

RunOutput switch_run(const SwitchConfig& cfg, const QubitState& qubit_init, int n_packets,
                     const PacketSpec& sp_spec, const SwitchOptions& options) {
  if (n_packets < 1) throw DomainError("at least one packet is required");
  const int m = cfg.chain_length();
  const int s = cfg.qubit_site();
  check_resolvable(sp_spec, m);

  const double v = 2.0 * cfg.kappa() * std::sin(sp_spec.k0);
  if (!(v > 0.0)) throw PreconditionError("the SP packet must move towards the qubit (0 < k0 < pi)");
  const double extent = 2.0 / sp_spec.width_param;
  const double clear = extent + 10.0;
  const double nc = sp_spec.center;
  if (nc - extent < 1.0 || nc + extent + 10.0 > s || s - 2.0 - clear - extent < 1.0 ||
      s + 3.0 + clear + extent > m) {
    throw PreconditionError("lead too short for the packet width and travel");
  }
  const double t_stop = options.stop_time > 0.0 ? options.stop_time : (s + 3.0 - nc + clear) / v;

  const SwitchBasis basis(cfg);
  const Propagator propagator(std::make_shared<const Hamiltonian>(build_switch_hamiltonian(cfg)));
  const SingleParticleState packet = make_sp_packet(sp_spec, m, Geometry::kOpenChain);

  const QubitState q0 = QubitState::superposition(qubit_init.left, qubit_init.right);
  Eigen::Vector2cd q(q0.left, q0.right);
  Eigen::Matrix2cd rho = q * q.adjoint();

  RunOutput out;
  out.experiment = "switch";
  Table packets{"packets", {"packet", "transmission", "reflection", "p_left", "p_right", "reflected_k"}, {}};
  double norm_drift = 0.0;

  for (int p = 1; p <= n_packets; ++p) {
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix2cd> mix(rho);
    double t = 0.0;
    double r = 0.0;
    double k_weighted = 0.0;
    double k_norm = 0.0;
    Eigen::Matrix2cd next = Eigen::Matrix2cd::Zero();
    std::vector<double> sp_density(m, 0.0);
    std::vector<double> bp_density(m, 0.0);
    for (int i = 0; i < 2; ++i) {
      const double weight = mix.eigenvalues()[i];
      if (weight < 1e-14) continue;
      const Complex component[2] = {mix.eigenvectors()(0, i), mix.eigenvectors()(1, i)};
      const SinglePass pass = pass_packet(cfg, basis, propagator, packet, component, t_stop);
      t += weight * pass.transmission;
      r += weight * pass.reflection;
      k_weighted += weight * pass.reflected_k_weighted;
      k_norm += weight * pass.reflected_k_norm;
      next += weight * pass.rho;
      norm_drift = std::max(norm_drift, pass.norm_drift);
      for (int x = 0; x < m; ++x) {
        sp_density[x] += weight * pass.sp_density[x];
        bp_density[x] += weight * pass.bp_density[x];
      }
    }
    rho = next;
    const double k_centroid = k_norm > 0.0 ? k_weighted / k_norm : 0.0;
    const std::string suffix = "_" + std::to_string(p);
    out.set("transmission" + suffix, t);
    out.set("reflection" + suffix, r);
    out.set("reflected_k" + suffix, k_centroid);
    if (p == 1) {
      out.set("transmission", t);
      out.set("reflection", r);
      out.set("reflected_k", k_centroid);
    }
    packets.rows.push_back({static_cast<double>(p), t, r, rho(0, 0).real(), rho(1, 1).real(), k_centroid});
    out.tables.push_back(profile_table(p - 1, sp_density, bp_density));
  }
  out.set("p_left", rho(0, 0).real());
  out.set("p_right", rho(1, 1).real());
  out.set("coherence", std::abs(rho(0, 1)));
  out.set("t_stop", t_stop);
  out.set("norm_drift", norm_drift);
  out.tables.push_back(std::move(packets));

  out.echo("chain_length", static_cast<std::int64_t>(m));
  out.echo("qubit_site", static_cast<std::int64_t>(s));
  out.echo("kappa", cfg.kappa());
  out.echo("kappa0", cfg.kappa0());
  out.echo("interaction", cfg.u_big());
  out.echo("u_small", cfg.u_small());
  out.echo("qubit_left_re", q0.left.real());
  out.echo("qubit_left_im", q0.left.imag());
  out.echo("qubit_right_re", q0.right.real());
  out.echo("qubit_right_im", q0.right.imag());
  out.echo("packets", static_cast<std::int64_t>(n_packets));
  echo_packet(out, "sp_", sp_spec);
  out.echo("stop_rule", std::string(options.stop_time > 0.0 ? "fixed"
                                                            : "transmitted lobe 2/alpha + 10 sites past s+3"));
  out.echo("t_stop", t_stop);
  return out;
}

}  // namespace boundpair
