#include "boundpair/spectral.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <iostream>
#include <limits>
#include <string>

#include "boundpair/errors.hpp"
#include "boundpair/parallel.hpp"

namespace boundpair {
namespace {

constexpr double kContinuumMargin = 1e-9;
// Largest a * dt per Chebyshev step; keeps the Bessel tail short and the
// std::cyl_bessel_j evaluations in their accurate range.
constexpr double kMaxChebyshevArgument = 20.0;

void fix_signs(DenseMatrix& vectors) {
  for (Index j = 0; j < vectors.cols(); ++j) {
    const double scale = vectors.col(j).cwiseAbs().maxCoeff();
    for (Index i = 0; i < vectors.rows(); ++i) {
      if (std::abs(vectors(i, j)) > 1e-8 * scale) {
        if (vectors(i, j) < 0.0) vectors.col(j) *= -1.0;
        break;
      }
    }
  }
}

}  // namespace

EigenSystem eig_hermitian(const DenseMatrix& h) {
  if (h.rows() != h.cols()) throw DomainError("eig_hermitian needs a square matrix");
  if (h.size() == 0) return {};
  const double scale = std::max(1.0, h.cwiseAbs().maxCoeff());
  if ((h - h.transpose()).cwiseAbs().maxCoeff() > 1e-12 * scale) {
    throw DomainError("eig_hermitian: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<DenseMatrix> solver(h);
  if (solver.info() != Eigen::Success) throw NumericalError("symmetric eigensolver did not converge");
  EigenSystem out{solver.eigenvalues(), solver.eigenvectors()};
  fix_signs(out.vectors);
  return out;
}

ContinuumEdges continuum_edges(double k, const LatticeParams& params) {
  const double w = 4.0 * params.hopping() * std::abs(std::cos(0.5 * k));
  return {-w, w};
}

BoundState bound_state(const MomentumIndex& momentum, const LatticeParams& params) {
  if (params.interaction() == 0.0) throw DomainError("no bound state exists for U = 0");
  const EffectiveChain chain = build_momentum_chain(momentum, params);
  const EigenSystem eig = eig_hermitian(chain.matrix());
  const ContinuumEdges edges = continuum_edges(momentum.k, params);
  const double margin = kContinuumMargin * params.hopping();

  const Index n = eig.values.size();
  const bool below = eig.values[0] < edges.lower - margin;
  const bool above = eig.values[n - 1] > edges.upper + margin;
  if (!below && !above) {
    throw NumericalError("no eigenvalue outside the continuum at k = " + std::to_string(momentum.k));
  }
  if ((below && eig.values[1] < edges.lower - margin) ||
      (above && eig.values[n - 2] > edges.upper + margin)) {
    throw NumericalError("more than one bound state on one side of the continuum");
  }
  Index pick = below ? 0 : n - 1;
  BoundState out;
  if (below && above) {
    pick = std::abs(eig.values[0]) >= std::abs(eig.values[n - 1]) ? 0 : n - 1;
    out.tie_broken = true;
    std::clog << "boundpair: bound states on both sides of the continuum at k = " << momentum.k
              << "; keeping E = " << eig.values[pick] << '\n';
  }

  out.momentum = momentum;
  out.energy = eig.values[pick];
  out.rel_amplitudes.resize(n);
  const double sign = eig.vectors(0, pick) < 0.0 ? -1.0 : 1.0;
  for (Index r = 0; r < n; ++r) out.rel_amplitudes[r] = sign * eig.vectors(r, pick);
  out.zeta = 4.0 * params.hopping() * std::cos(0.5 * momentum.k) / params.interaction();
  out.mu = out.zeta == 0.0 ? std::numeric_limits<double>::infinity() : std::asinh(1.0 / out.zeta);
  return out;
}

std::vector<BoundState> bound_band(const LatticeParams& params, int jobs) {
  const int n = params.n_sites();
  std::vector<BoundState> band(n);
  parallel_for(static_cast<std::size_t>(n), jobs, [&](std::size_t i) {
    band[i] = bound_state(MomentumIndex::on_grid(static_cast<int>(i) + 1, n), params);
  });
  return band;
}

// ---- propagation ------------------------------------------------------------

Propagator::Propagator(std::shared_ptr<const Hamiltonian> h)
    : Propagator(h, h && h->dim() <= kDenseDimensionLimit ? PropagationMethod::kSpectral
                                                            : PropagationMethod::kChebyshev) {}

Propagator::Propagator(std::shared_ptr<const Hamiltonian> h, PropagationMethod method,
                       double tolerance)
    : h_(std::move(h)), method_(method), tolerance_(tolerance) {
  if (!h_) throw DomainError("Propagator needs a Hamiltonian");
  if (method_ == PropagationMethod::kSpectral) {
    eig_ = eig_hermitian(h_->to_dense());
  } else {
    const auto [lo, hi] = h_->spectral_bounds();
    center_ = 0.5 * (lo + hi);
    half_width_ = 0.5 * (hi - lo) * (1.0 + 1e-12);
  }
}

ComplexVector Propagator::evolve(const ComplexVector& psi, double t) const {
  if (psi.size() != h_->dim()) throw DomainError("state dimension does not match the Hamiltonian");
  if (t == 0.0) return psi;
  ComplexVector out = method_ == PropagationMethod::kSpectral ? evolve_spectral(psi, t)
                                                               : evolve_chebyshev(psi, t);
  const double drift = std::abs(out.norm() - psi.norm());
  if (drift > 1e-9 * std::max(1.0, std::abs(t))) {
    throw NumericalError("propagator norm drift " + std::to_string(drift));
  }
  return out;
}

ComplexVector Propagator::evolve_spectral(const ComplexVector& psi, double t) const {
  const DenseMatrix& v = eig_->vectors;
  const RealVector re = v.transpose() * psi.real();
  const RealVector im = v.transpose() * psi.imag();
  RealVector out_re(re.size());
  RealVector out_im(re.size());
  for (Index i = 0; i < re.size(); ++i) {
    const Complex c = Complex(re[i], im[i]) * std::polar(1.0, -eig_->values[i] * t);
    out_re[i] = c.real();
    out_im[i] = c.imag();
  }
  const RealVector a = v * out_re;
  const RealVector b = v * out_im;
  ComplexVector out(psi.size());
  for (Index i = 0; i < psi.size(); ++i) out[i] = Complex(a[i], b[i]);
  return out;
}

ComplexVector Propagator::evolve_chebyshev(const ComplexVector& psi, double t) const {
  if (half_width_ == 0.0) return psi * std::polar(1.0, -center_ * t);

  const int steps = std::max(1, static_cast<int>(std::ceil(half_width_ * std::abs(t) / kMaxChebyshevArgument)));
  const double dt = t / steps;
  const double x = half_width_ * std::abs(dt);

  // e^{-i a X dt} = sum_m (2 - delta_m0) (-i sgn dt)^m J_m(a |dt|) T_m(X)
  std::vector<Complex> coeffs;
  const Complex unit(0.0, dt > 0.0 ? -1.0 : 1.0);
  Complex phase(1.0, 0.0);
  int small_run = 0;
  for (int m = 0;; ++m) {
    const double j = std::cyl_bessel_j(static_cast<double>(m), x);
    coeffs.push_back((m == 0 ? 1.0 : 2.0) * j * phase);
    phase *= unit;
    small_run = (m > x && std::abs(j) < tolerance_) ? small_run + 1 : 0;
    if (small_run >= 2) break;
    if (m > 10000) throw NumericalError("Chebyshev expansion did not converge");
  }

  const Complex step_phase = std::polar(1.0, -center_ * dt);
  ComplexVector state = psi;
  ComplexVector prev(psi.size());
  ComplexVector cur(psi.size());
  ComplexVector next(psi.size());
  ComplexVector acc(psi.size());
  ComplexVector hv(psi.size());
  const double inv_a = 1.0 / half_width_;

  for (int s = 0; s < steps; ++s) {
    prev = state;
    acc = coeffs[0] * prev;
    h_->apply(prev, hv);
    cur = (hv - center_ * prev) * inv_a;
    acc += coeffs[1] * cur;
    for (std::size_t m = 2; m < coeffs.size(); ++m) {
      h_->apply(cur, hv);
      next = 2.0 * inv_a * (hv - center_ * cur) - prev;
      acc += coeffs[m] * next;
      prev.swap(cur);
      cur.swap(next);
    }
    state = step_phase * acc;
  }
  return state;
}

}  // namespace boundpair
