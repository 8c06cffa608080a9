#pragma once

#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "boundpair/model.hpp"
#include "boundpair/spectral.hpp"

namespace testing_util {

using namespace boundpair;

inline ComplexVector random_state(Index dim, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  ComplexVector v(dim);
  for (Index i = 0; i < dim; ++i) v[i] = Complex(g(rng), g(rng));
  return v / v.norm();
}

inline std::vector<double> sorted_spectrum(const DenseMatrix& h) {
  const EigenSystem es = eig_hermitian(h);
  return {es.values.data(), es.values.data() + es.values.size()};
}

inline double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) worst = std::max(worst, std::abs(a[i] - b[i]));
  return worst;
}

// Two distinguishable particles on a ring, restricted to the symmetric
// subspace with an orthonormal basis in pair order.
inline DenseMatrix first_quantized_pair_hamiltonian(int n, double kappa, double u) {
  const int d = n * n;
  DenseMatrix h1 = DenseMatrix::Zero(d, d);
  auto at = [n](int x1, int x2) { return x1 * n + x2; };
  for (int x1 = 0; x1 < n; ++x1) {
    for (int x2 = 0; x2 < n; ++x2) {
      for (int step : {1, n - 1}) {
        h1(at((x1 + step) % n, x2), at(x1, x2)) -= kappa;
        h1(at(x1, (x2 + step) % n), at(x1, x2)) -= kappa;
      }
      if (x1 == x2) h1(at(x1, x2), at(x1, x2)) -= u;
    }
  }
  const Index dim = pair_dimension(n);
  DenseMatrix s = DenseMatrix::Zero(d, dim);
  for (int i = 1; i <= n; ++i) {
    for (int j = i; j <= n; ++j) {
      const Index col = pair_basis_index(i, j, n);
      if (i == j) {
        s(at(i - 1, i - 1), col) = 1.0;
      } else {
        s(at(i - 1, j - 1), col) = 1.0 / std::sqrt(2.0);
        s(at(j - 1, i - 1), col) = 1.0 / std::sqrt(2.0);
      }
    }
  }
  return s.transpose() * h1 * s;
}

}  // namespace testing_util
