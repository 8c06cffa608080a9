#include "boundpair/model.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "boundpair/errors.hpp"

namespace boundpair {
namespace {

int wrap_site(int site, int n_sites) {
  int s = (site - 1) % n_sites;
  if (s < 0) s += n_sites;
  return s + 1;
}

void check_site(int site, int n_sites) {
  if (site < 1 || site > n_sites) {
    throw DomainError("site " + std::to_string(site) + " outside [1, " + std::to_string(n_sites) + "]");
  }
}

}  // namespace

LatticeParams::LatticeParams(int n_sites, double hopping, double interaction)
    : n_sites_(n_sites), hopping_(hopping), interaction_(interaction) {
  if (n_sites < 5 || n_sites % 2 == 0) {
    throw DomainError("ring size must be odd and >= 5, got " + std::to_string(n_sites));
  }
  if (!(hopping > 0.0) || !std::isfinite(hopping)) {
    throw DomainError("hopping must be positive and finite");
  }
  if (!std::isfinite(interaction)) {
    throw DomainError("interaction must be finite");
  }
}

MomentumIndex MomentumIndex::on_grid(int n, int n_sites) {
  if (n < 1 || n > n_sites) {
    throw DomainError("momentum index " + std::to_string(n) + " outside [1, N]");
  }
  return {n, 2.0 * kPi * n / n_sites, n % 2 == 0 ? 1 : -1};
}

double principal_angle(double k) {
  double r = std::remainder(k, 2.0 * kPi);  // [-pi, pi]
  if (r <= -kPi) r += 2.0 * kPi;
  return r;
}

DenseMatrix EffectiveChain::matrix() const {
  const int n = length();
  DenseMatrix m = DenseMatrix::Zero(n, n);
  for (int r = 0; r < n; ++r) m(r, r) = onsite[r];
  for (int r = 0; r + 1 < n; ++r) {
    m(r, r + 1) = hoppings[r];
    m(r + 1, r) = hoppings[r];
  }
  return m;
}

double packet_normalization(const PacketSpec& spec, int n_sites) {
  const double a2 = spec.width_param * spec.width_param;
  double omega = 0.0;
  for (int n = 1; n <= n_sites; ++n) {
    const double d = principal_angle(2.0 * kPi * n / n_sites - spec.k0);
    omega += std::exp(-d * d / a2);
  }
  return omega;
}

void check_resolvable(const PacketSpec& spec, int n_sites) {
  const double bound = 2.0 * (2.0 * kPi / n_sites);
  if (!(spec.width_param >= bound * (1.0 - 1e-12))) {
    throw DomainError("packet width alpha = " + std::to_string(spec.width_param) +
                      " is below the grid resolvability bound " + std::to_string(bound));
  }
}

SwitchConfig::SwitchConfig(int chain_length, int qubit_site, double kappa, double u_big,
                           double u_small, double kappa0)
    : chain_length_(chain_length),
      qubit_site_(qubit_site),
      kappa_(kappa),
      kappa0_(kappa0 < 0.0 ? kappa / std::sqrt(2.0) : kappa0),
      u_big_(u_big),
      u_small_(u_small) {
  if (qubit_site < 1 || qubit_site + 3 > chain_length) {
    throw DomainError("qubit window {s, .., s+3} must lie inside the chain");
  }
  if (!(kappa > 0.0) || !(kappa0_ > 0.0)) {
    throw DomainError("switch hoppings must be positive");
  }
  if (!(u_small > 0.0)) {
    throw DomainError("qubit interaction U0 must be positive");
  }
  if (u_big < 10.0 * u_small) {
    throw DomainError("BP confinement needs U >= 10 U0");
  }
}

QubitState QubitState::superposition(Complex c_left, Complex c_right) {
  const double norm = std::sqrt(std::norm(c_left) + std::norm(c_right));
  if (norm == 0.0) throw DomainError("qubit amplitudes are both zero");
  return {c_left / norm, c_right / norm};
}

// ---- basis maps -------------------------------------------------------------

Index pair_dimension(int n_sites) {
  return static_cast<Index>(n_sites) * (n_sites + 1) / 2;
}

Index pair_basis_index(int i, int j, int n_sites) {
  check_site(i, n_sites);
  check_site(j, n_sites);
  if (i > j) throw DomainError("pair sites must satisfy i <= j");
  const Index a = i - 1;
  // rows 1..i-1 hold N, N-1, ... entries
  return a * n_sites - a * (a - 1) / 2 + (j - i);
}

std::pair<int, int> pair_basis_sites(Index index, int n_sites) {
  if (index < 0 || index >= pair_dimension(n_sites)) throw DomainError("pair index out of range");
  int i = 1;
  Index row = n_sites;
  while (index >= row) {
    index -= row;
    --row;
    ++i;
  }
  return {i, i + static_cast<int>(index)};
}

Index hardcore_dimension(int n_sites) {
  return static_cast<Index>(n_sites) * (n_sites - 1);
}

Index hardcore_basis_index(int sp_site, int bp_site, int n_sites) {
  check_site(sp_site, n_sites);
  check_site(bp_site, n_sites);
  if (sp_site == bp_site) throw DomainError("SP and BP cannot share a site");
  const Index sp_slot = sp_site < bp_site ? sp_site - 1 : sp_site - 2;
  return static_cast<Index>(bp_site - 1) * (n_sites - 1) + sp_slot;
}

std::pair<int, int> hardcore_basis_sites(Index index, int n_sites) {
  if (index < 0 || index >= hardcore_dimension(n_sites)) throw DomainError("hardcore index out of range");
  const int bp = static_cast<int>(index / (n_sites - 1)) + 1;
  int sp = static_cast<int>(index % (n_sites - 1)) + 1;
  if (sp >= bp) ++sp;
  return {sp, bp};
}

Index SwitchBasis::index(int sp_site, int bp_site) const {
  check_site(sp_site, chain_length_);
  if (bp_site != left_ && bp_site != left_ + 1) throw DomainError("BP must sit on the qubit sites");
  if (sp_site == bp_site) throw DomainError("SP and BP cannot share a site");
  const Index slot = bp_site == left_ ? 0 : 1;
  const Index sp_slot = sp_site < bp_site ? sp_site - 1 : sp_site - 2;
  return slot * (chain_length_ - 1) + sp_slot;
}

std::pair<int, int> SwitchBasis::sites(Index index) const {
  if (index < 0 || index >= dimension()) throw DomainError("switch index out of range");
  const int bp = left_ + static_cast<int>(index / (chain_length_ - 1));
  int sp = static_cast<int>(index % (chain_length_ - 1)) + 1;
  if (sp >= bp) ++sp;
  return {sp, bp};
}

// ---- Hamiltonian storage ----------------------------------------------------

Hamiltonian Hamiltonian::from_triplets(Index dim, const std::vector<Triplet>& entries) {
  if (dim <= kDenseDimensionLimit) {
    DenseMatrix m = DenseMatrix::Zero(dim, dim);
    for (const auto& t : entries) m(t.row, t.col) += t.value;
    return Hamiltonian(std::move(m));
  }
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(entries.size());
  for (const auto& t : entries) trips.emplace_back(t.row, t.col, t.value);
  SparseMatrix m(dim, dim);
  m.setFromTriplets(trips.begin(), trips.end());
  m.makeCompressed();
  return Hamiltonian(std::move(m));
}

Hamiltonian Hamiltonian::from_dense(DenseMatrix m) {
  if (m.rows() != m.cols()) throw DomainError("Hamiltonian must be square");
  return Hamiltonian(std::move(m));
}

Index Hamiltonian::dim() const {
  return std::visit([](const auto& m) -> Index { return m.rows(); }, storage_);
}

double Hamiltonian::element(Index row, Index col) const {
  if (const auto* d = dense()) return (*d)(row, col);
  return sparse()->coeff(row, col);
}

DenseMatrix Hamiltonian::to_dense() const {
  if (const auto* d = dense()) return *d;
  return DenseMatrix(*sparse());
}

void Hamiltonian::apply(const ComplexVector& in, ComplexVector& out) const {
  if (in.size() != dim()) throw DomainError("state dimension does not match the Hamiltonian");
  out.resize(in.size());
  if (const auto* d = dense()) {
    const RealVector re = *d * in.real();
    const RealVector im = *d * in.imag();
    for (Index i = 0; i < in.size(); ++i) out[i] = Complex(re[i], im[i]);
    return;
  }
  const SparseMatrix& s = *sparse();
  const auto* outer = s.outerIndexPtr();
  const auto* inner = s.innerIndexPtr();
  const auto* values = s.valuePtr();
  for (Index row = 0; row < s.rows(); ++row) {
    Complex acc{0.0, 0.0};
    for (auto p = outer[row]; p < outer[row + 1]; ++p) acc += values[p] * in[inner[p]];
    out[row] = acc;
  }
}

ComplexVector Hamiltonian::apply(const ComplexVector& in) const {
  ComplexVector out;
  apply(in, out);
  return out;
}

Complex Hamiltonian::expectation(const ComplexVector& psi) const {
  return psi.dot(apply(psi));  // conjugates psi
}

std::pair<double, double> Hamiltonian::spectral_bounds() const {
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  auto update = [&](double diag, double radius) {
    if (first) {
      lo = diag - radius;
      hi = diag + radius;
      first = false;
    } else {
      lo = std::min(lo, diag - radius);
      hi = std::max(hi, diag + radius);
    }
  };
  if (const auto* d = dense()) {
    for (Index i = 0; i < d->rows(); ++i) {
      const double radius = d->row(i).cwiseAbs().sum() - std::abs((*d)(i, i));
      update((*d)(i, i), radius);
    }
  } else {
    const SparseMatrix& s = *sparse();
    for (Index i = 0; i < s.outerSize(); ++i) {
      double diag = 0.0;
      double radius = 0.0;
      for (SparseMatrix::InnerIterator it(s, i); it; ++it) {
        if (it.col() == i) diag += it.value();
        else radius += std::abs(it.value());
      }
      update(diag, radius);
    }
  }
  return {lo, hi};
}

double Hamiltonian::asymmetry() const {
  if (const auto* d = dense()) return (*d - d->transpose()).cwiseAbs().maxCoeff();
  const SparseMatrix& s = *sparse();
  const SparseMatrix t = s.transpose();
  const SparseMatrix diff = s - t;
  double worst = 0.0;
  for (Index i = 0; i < diff.nonZeros(); ++i) worst = std::max(worst, std::abs(diff.valuePtr()[i]));
  return worst;
}

double Hamiltonian::max_abs() const {
  if (const auto* d = dense()) return d->cwiseAbs().maxCoeff();
  const SparseMatrix& s = *sparse();
  double worst = 0.0;
  for (Index i = 0; i < s.nonZeros(); ++i) worst = std::max(worst, std::abs(s.valuePtr()[i]));
  return worst;
}

// ---- builders ---------------------------------------------------------------

Hamiltonian build_full_pair_hamiltonian(const LatticeParams& params) {
  const int n = params.n_sites();
  const double kappa = params.hopping();
  const Index dim = pair_dimension(n);
  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(dim) * 5);

  for (Index col = 0; col < dim; ++col) {
    const auto [i, j] = pair_basis_sites(col, n);
    if (i == j) entries.push_back({col, col, -params.interaction()});

    // a_b^+ a_a acting on the occupation state; sources are the distinct
    // occupied sites.
    const int sources[2] = {i, j};
    for (int s = 0; s < (i == j ? 1 : 2); ++s) {
      const int a = sources[s];
      const int other = sources[1 - s];
      const double n_a = i == j ? 2.0 : 1.0;
      for (int step : {-1, 1}) {
        const int b = wrap_site(a + step, n);
        // occupation of b before the hop: the remaining particle may sit there
        const double n_b = (i == j) ? 0.0 : (other == b ? 1.0 : 0.0);
        const int remaining = (i == j) ? a : other;
        const int lo = std::min(remaining, b);
        const int hi = std::max(remaining, b);
        const double amp = -kappa * std::sqrt(n_a) * std::sqrt(n_b + 1.0);
        entries.push_back({pair_basis_index(lo, hi, n), col, amp});
      }
    }
  }
  return Hamiltonian::from_triplets(dim, entries);
}

EffectiveChain build_momentum_chain(const MomentumIndex& momentum, const LatticeParams& params) {
  const int half = params.half();
  const double kappa = params.hopping();
  const double c = std::cos(0.5 * momentum.k);

  EffectiveChain chain;
  chain.momentum = momentum;
  chain.hoppings.assign(half, -2.0 * kappa * c);
  chain.hoppings[0] = -2.0 * std::sqrt(2.0) * kappa * c;
  chain.onsite.assign(half + 1, 0.0);
  chain.onsite[0] = -params.interaction();
  // separation N0 + 1 folds back onto N0 with the ring's boundary phase
  chain.onsite[half] += -2.0 * kappa * c * momentum.boundary_parity;
  return chain;
}

Hamiltonian build_hardcore_hamiltonian(const LatticeParams& params, double swap_amplitude) {
  const double u = params.interaction();
  if (u == 0.0) throw DomainError("the hardcore SP/BP model needs U != 0");
  const int n = params.n_sites();
  const double kappa = params.hopping();
  const double bp_hop = 4.0 * kappa * kappa / u;
  const Index dim = hardcore_dimension(n);

  std::vector<Triplet> entries;
  entries.reserve(static_cast<std::size_t>(dim) * 6);
  for (Index col = 0; col < dim; ++col) {
    const auto [sp, bp] = hardcore_basis_sites(col, n);
    entries.push_back({col, col, u});
    for (int step : {-1, 1}) {
      const int sp_to = wrap_site(sp + step, n);
      if (sp_to != bp) entries.push_back({hardcore_basis_index(sp_to, bp, n), col, -kappa});
      const int bp_to = wrap_site(bp + step, n);
      if (bp_to != sp) entries.push_back({hardcore_basis_index(sp, bp_to, n), col, bp_hop});
    }
    // neighbouring SP and BP exchange places
    if (wrap_site(sp + 1, n) == bp || wrap_site(sp - 1, n) == bp) {
      entries.push_back({hardcore_basis_index(bp, sp, n), col, -swap_amplitude});
    }
  }
  return Hamiltonian::from_triplets(dim, entries);
}

Hamiltonian build_hardcore_hamiltonian(const LatticeParams& params) {
  return build_hardcore_hamiltonian(params, std::sqrt(2.0) * params.hopping());
}

Hamiltonian build_switch_hamiltonian(const SwitchConfig& cfg) {
  const SwitchBasis basis(cfg);
  const int m = cfg.chain_length();
  const int left = cfg.left_site();
  const int right = cfg.right_site();
  const double bp_hop = 4.0 * cfg.kappa0() * cfg.kappa0() / cfg.u_small();
  const double swap = -std::sqrt(2.0) * cfg.kappa0();

  std::vector<Triplet> entries;
  for (Index col = 0; col < basis.dimension(); ++col) {
    const auto [sp, bp] = basis.sites(col);
    entries.push_back({col, col, cfg.u_small()});
    for (int step : {-1, 1}) {
      const int to = sp + step;
      if (to < 1 || to > m || to == bp) continue;
      const int bond = std::min(sp, to);
      const double amp = bond == left ? -cfg.kappa0() : -cfg.kappa();
      entries.push_back({basis.index(to, bp), col, amp});
    }
    const int other = bp == left ? right : left;
    if (sp != other) entries.push_back({basis.index(sp, other), col, bp_hop});
  }
  const Index a = basis.index(left, right);
  const Index b = basis.index(right, left);
  entries.push_back({a, b, swap});
  entries.push_back({b, a, swap});
  return Hamiltonian::from_triplets(basis.dimension(), entries);
}

Hamiltonian build_ring_hamiltonian(int n_sites, double hopping) {
  if (n_sites < 3) throw DomainError("ring needs at least 3 sites");
  std::vector<Triplet> entries;
  for (int s = 1; s <= n_sites; ++s) {
    const int t = wrap_site(s + 1, n_sites);
    entries.push_back({s - 1, t - 1, -hopping});
    entries.push_back({t - 1, s - 1, -hopping});
  }
  return Hamiltonian::from_triplets(n_sites, entries);
}

Hamiltonian build_chain_hamiltonian(int n_sites, double hopping) {
  if (n_sites < 2) throw DomainError("chain needs at least 2 sites");
  std::vector<Triplet> entries;
  for (int s = 1; s < n_sites; ++s) {
    entries.push_back({s - 1, s, -hopping});
    entries.push_back({s, s - 1, -hopping});
  }
  return Hamiltonian::from_triplets(n_sites, entries);
}

// ---- translations -----------------------------------------------------------

PairState translate(const PairState& state, int shift) {
  const int n = state.n_sites;
  PairState out{n, ComplexVector::Zero(state.amplitudes.size())};
  for (Index idx = 0; idx < state.amplitudes.size(); ++idx) {
    const auto [i, j] = pair_basis_sites(idx, n);
    const int a = wrap_site(i + shift, n);
    const int b = wrap_site(j + shift, n);
    out.amplitudes[pair_basis_index(std::min(a, b), std::max(a, b), n)] = state.amplitudes[idx];
  }
  return out;
}

HardcoreState translate(const HardcoreState& state, int shift) {
  const int n = state.n_sites;
  HardcoreState out{n, ComplexVector::Zero(state.amplitudes.size())};
  for (Index idx = 0; idx < state.amplitudes.size(); ++idx) {
    const auto [sp, bp] = hardcore_basis_sites(idx, n);
    out.amplitudes[hardcore_basis_index(wrap_site(sp + shift, n), wrap_site(bp + shift, n), n)] =
        state.amplitudes[idx];
  }
  return out;
}

SingleParticleState translate(const SingleParticleState& state, int shift) {
  const int n = state.n_sites();
  SingleParticleState out{ComplexVector::Zero(n)};
  for (int s = 1; s <= n; ++s) out.amplitudes[wrap_site(s + shift, n) - 1] = state.amplitudes[s - 1];
  return out;
}

Complex translation_expectation(const PairState& state) {
  return state.amplitudes.dot(translate(state, 1).amplitudes);
}

Complex translation_expectation(const HardcoreState& state) {
  return state.amplitudes.dot(translate(state, 1).amplitudes);
}

}  // namespace boundpair
