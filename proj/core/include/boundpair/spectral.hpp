#pragma once

#include <memory>
#include <optional>
#include <vector>

#include "boundpair/model.hpp"

namespace boundpair {

struct EigenSystem {
  RealVector values;     // ascending
  DenseMatrix vectors;   // column j belongs to values[j]; first nonzero entry > 0
};

// Throws DomainError when h is not symmetric within 1e-12 (relative to its
// largest entry) and NumericalError on solver failure.
EigenSystem eig_hermitian(const DenseMatrix& h);

struct ContinuumEdges {
  double lower = 0.0;
  double upper = 0.0;
};

// Two free particles at total momentum k fill [-4 kappa |cos(k/2)|, +4 kappa |cos(k/2)|].
ContinuumEdges continuum_edges(double k, const LatticeParams& params);

// The unique eigenstate of the momentum block lying outside the continuum
// (margin 1e-9 kappa). Throws DomainError for U = 0 and NumericalError when
// no eigenvalue escapes the continuum.
BoundState bound_state(const MomentumIndex& momentum, const LatticeParams& params);

// Bound states for n = 1 .. N, in grid order.
std::vector<BoundState> bound_band(const LatticeParams& params, int jobs = 1);

enum class PropagationMethod { kSpectral, kChebyshev };

// exp(-i H t) on a fixed Hamiltonian. Spectral propagation diagonalizes once
// (dimension <= kDenseDimensionLimit by default); Chebyshev propagation
// expands in Bessel-weighted Chebyshev polynomials over Gershgorin bounds,
// in steps short enough that the dropped tail is below `tolerance`.
// evolve() is const and keeps no scratch state, so one Propagator may be
// shared between threads.
class Propagator {
 public:
  explicit Propagator(std::shared_ptr<const Hamiltonian> h);
  Propagator(std::shared_ptr<const Hamiltonian> h, PropagationMethod method,
             double tolerance = 1e-14);

  PropagationMethod method() const { return method_; }
  double tolerance() const { return tolerance_; }
  const Hamiltonian& hamiltonian() const { return *h_; }

  // Throws DomainError on dimension mismatch and NumericalError when the
  // norm drifts by more than 1e-9 per unit time.
  ComplexVector evolve(const ComplexVector& psi, double t) const;

 private:
  ComplexVector evolve_spectral(const ComplexVector& psi, double t) const;
  ComplexVector evolve_chebyshev(const ComplexVector& psi, double t) const;

  std::shared_ptr<const Hamiltonian> h_;
  PropagationMethod method_;
  double tolerance_;
  std::optional<EigenSystem> eig_;
  double center_ = 0.0;
  double half_width_ = 0.0;
};

inline ComplexVector evolve(const Propagator& p, const ComplexVector& psi, double t) {
  return p.evolve(psi, t);
}

}  // namespace boundpair
