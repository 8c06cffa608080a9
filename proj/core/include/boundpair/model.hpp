#pragma once

// Domain types, basis index maps and Hamiltonian builders for the
// two-boson Bose-Hubbard ring and its large-U effective models.
//
// Sites are 1-based in every public index map. Vectors indexed by site use
// slot site - 1.

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <complex>
#include <utility>
#include <variant>
#include <vector>

namespace boundpair {

using Index = Eigen::Index;
using Complex = std::complex<double>;
using RealVector = Eigen::VectorXd;
using ComplexVector = Eigen::VectorXcd;
using DenseMatrix = Eigen::MatrixXd;
using SparseMatrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

inline constexpr double kPi = 3.14159265358979323846;

// Builders store matrices up to this dimension densely, larger ones in CSR.
inline constexpr Index kDenseDimensionLimit = 4096;

class LatticeParams {
 public:
  // Ring of n_sites (odd, >= 5) with hopping kappa > 0 and on-site
  // interaction U. Throws DomainError otherwise.
  LatticeParams(int n_sites, double hopping, double interaction);

  int n_sites() const { return n_sites_; }
  // N0 = (N - 1) / 2, the largest inequivalent pair separation.
  int half() const { return (n_sites_ - 1) / 2; }
  double hopping() const { return hopping_; }
  double interaction() const { return interaction_; }

  LatticeParams with_interaction(double interaction) const {
    return {n_sites_, hopping_, interaction};
  }

 private:
  int n_sites_;
  double hopping_;
  double interaction_;
};

// Total pair momentum k = 2 pi n / N. The half-momentum phase is taken on
// the branch exp(i pi n / N); boundary_parity = (-1)^n is the sign the
// reduced chain picks up where the pair separation wraps around the ring.
struct MomentumIndex {
  int n = 0;
  double k = 0.0;
  int boundary_parity = 1;

  static MomentumIndex on_grid(int n, int n_sites);
  // Arbitrary k, used for analytic limits (e.g. k = pi, which no odd ring
  // contains).
  static MomentumIndex off_grid(double k, int boundary_parity = 1) {
    return {0, k, boundary_parity};
  }

  Complex half_phase() const { return std::polar(1.0, 0.5 * k); }
};

// k in (-pi, pi] equivalent to the argument.
double principal_angle(double k);

// Tridiagonal block of the pair Hamiltonian at fixed total momentum, over
// relative coordinate r = 0 .. N0.
struct EffectiveChain {
  MomentumIndex momentum;
  std::vector<double> hoppings;  // bond r <-> r+1, size N0
  std::vector<double> onsite;    // size N0 + 1

  int length() const { return static_cast<int>(onsite.size()); }
  DenseMatrix matrix() const;
};

struct BoundState {
  MomentumIndex momentum;
  double energy = 0.0;
  std::vector<double> rel_amplitudes;  // f^k(r), r = 0 .. N0, f(0) > 0
  double zeta = 0.0;
  double mu = 0.0;
  // Set when eigenvalues escaped the continuum on both sides and the
  // larger |energy| was kept.
  bool tie_broken = false;

  double magnitude() const { return energy < 0 ? -energy : energy; }
};

// Gaussian packet centred at `center` (site units) with carrier k0 and
// momentum-space width alpha.
struct PacketSpec {
  double k0 = 0.0;
  double center = 1.0;
  double width_param = 2.0 / 15.0;
};

// Omega = sum_k exp(-(k - k0)^2 / alpha^2) over the N-point grid with
// principal differences.
double packet_normalization(const PacketSpec& spec, int n_sites);
// Throws DomainError unless alpha >= 2 * (2 pi / N).
void check_resolvable(const PacketSpec& spec, int n_sites);

struct BandDescriptor {
  double k0 = 0.0;
  double v_g = 0.0;
  double lambda_k0 = 0.0;
  double eta = 0.0;
};

struct PairState {
  int n_sites = 0;
  ComplexVector amplitudes;  // over pair_basis_index
};

struct HardcoreState {
  int n_sites = 0;
  ComplexVector amplitudes;  // over hardcore_basis_index
};

struct SingleParticleState {
  ComplexVector amplitudes;  // slot site - 1
  int n_sites() const { return static_cast<int>(amplitudes.size()); }
};

class SwitchConfig {
 public:
  // kappa0 defaults to kappa / sqrt(2). Throws DomainError when the qubit
  // window {s, .., s+3} leaves the chain, when energies are non-positive
  // or when U < 10 U0.
  SwitchConfig(int chain_length, int qubit_site, double kappa, double u_big,
               double u_small, double kappa0 = -1.0);

  int chain_length() const { return chain_length_; }
  int qubit_site() const { return qubit_site_; }
  int left_site() const { return qubit_site_ + 1; }
  int right_site() const { return qubit_site_ + 2; }
  double kappa() const { return kappa_; }
  double kappa0() const { return kappa0_; }
  double u_big() const { return u_big_; }
  double u_small() const { return u_small_; }

 private:
  int chain_length_;
  int qubit_site_;
  double kappa_;
  double kappa0_;
  double u_big_;
  double u_small_;
};

struct QubitState {
  Complex left{1.0, 0.0};
  Complex right{0.0, 0.0};

  static QubitState L() { return {{1.0, 0.0}, {0.0, 0.0}}; }
  static QubitState R() { return {{0.0, 0.0}, {1.0, 0.0}}; }
  // Normalizes (c_L, c_R); throws DomainError for the zero vector.
  static QubitState superposition(Complex c_left, Complex c_right);
};

// ---- basis index maps -----------------------------------------------------

Index pair_dimension(int n_sites);
// Unordered pair 1 <= i <= j <= N in row-major order.
Index pair_basis_index(int i, int j, int n_sites);
std::pair<int, int> pair_basis_sites(Index index, int n_sites);

Index hardcore_dimension(int n_sites);
// Ordered (SP site, BP site), sp != bp.
Index hardcore_basis_index(int sp_site, int bp_site, int n_sites);
std::pair<int, int> hardcore_basis_sites(Index index, int n_sites);

// (SP site in [1, M]) x (BP site in {s+1, s+2}), SP excluded from the BP site.
class SwitchBasis {
 public:
  explicit SwitchBasis(const SwitchConfig& cfg)
      : chain_length_(cfg.chain_length()), left_(cfg.left_site()) {}

  Index dimension() const { return 2 * static_cast<Index>(chain_length_ - 1); }
  Index index(int sp_site, int bp_site) const;
  std::pair<int, int> sites(Index index) const;
  int chain_length() const { return chain_length_; }
  int left_site() const { return left_; }
  int right_site() const { return left_ + 1; }

 private:
  int chain_length_;
  int left_;
};

// ---- Hamiltonians ---------------------------------------------------------

struct Triplet {
  Index row;
  Index col;
  double value;
};

// Real symmetric operator, dense up to kDenseDimensionLimit and CSR above.
// Immutable after construction.
class Hamiltonian {
 public:
  enum class Storage { kDense, kSparse };

  // Duplicate (row, col) entries are summed.
  static Hamiltonian from_triplets(Index dim, const std::vector<Triplet>& entries);
  static Hamiltonian from_dense(DenseMatrix m);

  Index dim() const;
  Storage storage() const { return std::holds_alternative<DenseMatrix>(storage_) ? Storage::kDense : Storage::kSparse; }
  bool is_sparse() const { return storage() == Storage::kSparse; }

  double element(Index row, Index col) const;
  DenseMatrix to_dense() const;
  const DenseMatrix* dense() const { return std::get_if<DenseMatrix>(&storage_); }
  const SparseMatrix* sparse() const { return std::get_if<SparseMatrix>(&storage_); }

  void apply(const ComplexVector& in, ComplexVector& out) const;
  ComplexVector apply(const ComplexVector& in) const;
  Complex expectation(const ComplexVector& psi) const;

  // Gershgorin enclosure of the spectrum.
  std::pair<double, double> spectral_bounds() const;
  // max |H_ij - H_ji|
  double asymmetry() const;
  double max_abs() const;

 private:
  explicit Hamiltonian(std::variant<DenseMatrix, SparseMatrix> s) : storage_(std::move(s)) {}
  std::variant<DenseMatrix, SparseMatrix> storage_;
};

// Two bosons on the ring, normalized occupation basis
// |i,j> = a_i^+ a_j^+ |0> (i < j), (a_i^+)^2 / sqrt 2 |0> (i = j).
Hamiltonian build_full_pair_hamiltonian(const LatticeParams& params);

// Exact block of build_full_pair_hamiltonian at total momentum k.
EffectiveChain build_momentum_chain(const MomentumIndex& momentum, const LatticeParams& params);

// Effective large-U model of one single particle (SP) and one bound pair
// (BP) as mutually exclusive hardcore species on the ring. swap_amplitude
// is the magnitude w of the exchange term -w b+_{i+1} b_i a+_i a_{i+1}; the
// effective model uses sqrt(2) kappa. Throws DomainError for U = 0.
Hamiltonian build_hardcore_hamiltonian(const LatticeParams& params, double swap_amplitude);
Hamiltonian build_hardcore_hamiltonian(const LatticeParams& params);

// Charge-qubit switch on an open chain, BP confined to {s+1, s+2}.
Hamiltonian build_switch_hamiltonian(const SwitchConfig& cfg);

// Single particle with hopping -t on a ring or an open chain.
Hamiltonian build_ring_hamiltonian(int n_sites, double hopping);
Hamiltonian build_chain_hamiltonian(int n_sites, double hopping);

// ---- translations ---------------------------------------------------------

// Cyclic shift of every particle by `shift` sites.
PairState translate(const PairState& state, int shift);
HardcoreState translate(const HardcoreState& state, int shift);
SingleParticleState translate(const SingleParticleState& state, int shift);

// <psi| T |psi> for the one-site translation T; conserved on ring models.
Complex translation_expectation(const PairState& state);
Complex translation_expectation(const HardcoreState& state);

}  // namespace boundpair
