// SPDX-License-Identifier: Apache-2.0
//
// Deterministic random generators for property tests.

#pragma once

#include <random>

#include "qpccm/qcore.hpp"

namespace qpccm::testing {

inline std::mt19937_64 make_rng(std::uint64_t seed = 0x5eed) {
  return std::mt19937_64{seed};
}

inline ComplexMatrix random_gaussian_matrix(Eigen::Index dim,
                                            std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexMatrix m(dim, dim);
  for (Eigen::Index i = 0; i < dim; ++i) {
    for (Eigen::Index j = 0; j < dim; ++j) {
      m(i, j) = Complex{gauss(rng), gauss(rng)};
    }
  }
  return m;
}

// Haar-ish random unitary from the QR decomposition of a Ginibre matrix.
inline ComplexMatrix random_unitary(Eigen::Index dim, std::mt19937_64& rng) {
  const ComplexMatrix g = random_gaussian_matrix(dim, rng);
  Eigen::HouseholderQR<ComplexMatrix> qr(g);
  ComplexMatrix q = qr.householderQ();
  const ComplexMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < dim; ++i) {
    const Complex d = r(i, i);
    q.col(i) *= std::abs(d) > 0 ? d / std::abs(d) : Complex{1.0, 0.0};
  }
  return q;
}

inline DensityMatrix random_density(Eigen::Index dim, std::mt19937_64& rng) {
  const ComplexMatrix a = random_gaussian_matrix(dim, rng);
  ComplexMatrix rho = a * a.adjoint();
  rho /= rho.trace();
  return DensityMatrix(std::move(rho));
}

inline PureState random_pure(Eigen::Index dim, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss;
  ComplexVector v(dim);
  for (Eigen::Index i = 0; i < dim; ++i) v(i) = Complex{gauss(rng), gauss(rng)};
  v.normalize();
  return PureState(std::move(v));
}

inline BlochVector random_bloch(std::mt19937_64& rng) {
  // Uniform direction, radius biased toward the surface; includes |r|=1.
  std::normal_distribution<double> gauss;
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  double x = gauss(rng), y = gauss(rng), z = gauss(rng);
  const double n = std::sqrt(x * x + y * y + z * z);
  if (n == 0.0) return BlochVector{0.0, 0.0, 0.0};
  const double r = std::cbrt(unit(rng));
  return BlochVector{r * x / n, r * y / n, r * z / n};
}

}  // namespace qpccm::testing
