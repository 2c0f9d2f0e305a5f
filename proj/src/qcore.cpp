// SPDX-License-Identifier: Apache-2.0

#include "qpccm/qcore.hpp"

#include <cmath>
#include <numbers>

namespace qpccm {

namespace {

const Complex kI{0.0, 1.0};

void check_dim_2_or_4(Eigen::Index dim, const char* what) {
  if (dim != 2 && dim != 4) {
    throw std::invalid_argument(std::string(what) +
                                ": dimension must be 2 or 4");
  }
}

void check_finite(const ComplexMatrix& m, const char* what) {
  if (!m.allFinite()) {
    throw std::invalid_argument(std::string(what) + ": non-finite entries");
  }
}

}  // namespace

const ComplexMatrix& pauli(PauliAxis axis) {
  static const ComplexMatrix sx = [] {
    ComplexMatrix m(2, 2);
    m << 0, 1, 1, 0;
    return m;
  }();
  static const ComplexMatrix sy = [] {
    ComplexMatrix m(2, 2);
    m << 0, -kI, kI, 0;
    return m;
  }();
  static const ComplexMatrix sz = [] {
    ComplexMatrix m(2, 2);
    m << 1, 0, 0, -1;
    return m;
  }();
  switch (axis) {
    case PauliAxis::X: return sx;
    case PauliAxis::Y: return sy;
    default: return sz;
  }
}

ComplexMatrix identity(Eigen::Index dim) {
  return ComplexMatrix::Identity(dim, dim);
}

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b, double tol) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) return false;
  return max_abs_diff(a, b) <= tol;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  return (a - b).cwiseAbs().maxCoeff();
}

bool is_hermitian(const ComplexMatrix& m, double tol) {
  return m.rows() == m.cols() && max_abs_diff(m, m.adjoint()) <= tol;
}

bool is_unitary(const ComplexMatrix& m, double tol) {
  if (m.rows() != m.cols()) return false;
  return max_abs_diff(m.adjoint() * m, identity(m.rows())) <= tol;
}

double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b) {
  // Frobenius-optimal phase: maximize Re(e^{i phi} tr(a^dagger b)).
  const Complex overlap = (a.adjoint() * b).trace();
  const Complex phase = std::abs(overlap) > 0
                            ? std::conj(overlap) / std::abs(overlap)
                            : Complex{1.0, 0.0};
  return max_abs_diff(a, phase * b);
}

PureState::PureState(ComplexVector amplitudes) : amp_(std::move(amplitudes)) {
  check_dim_2_or_4(amp_.size(), "PureState");
  if (!amp_.allFinite()) {
    throw std::invalid_argument("PureState: non-finite amplitudes");
  }
  if (std::abs(amp_.norm() - 1.0) > kEqTol) {
    throw std::invalid_argument("PureState: amplitudes not normalized");
  }
}

PureState PureState::basis(Eigen::Index dim, Eigen::Index index) {
  if (index < 0 || index >= dim) {
    throw std::invalid_argument("PureState::basis: index out of range");
  }
  ComplexVector v = ComplexVector::Zero(dim);
  v(index) = 1.0;
  return PureState(std::move(v));
}

PureState PureState::equatorial(double phi) {
  ComplexVector v(2);
  const double s = 1.0 / std::numbers::sqrt2;
  v << Complex{s, 0.0}, s * std::exp(kI * phi);
  return PureState(std::move(v));
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
  if (mat_.rows() != mat_.cols()) {
    throw std::invalid_argument("DensityMatrix: not square");
  }
  check_dim_2_or_4(mat_.rows(), "DensityMatrix");
  check_finite(mat_, "DensityMatrix");
  if (!is_hermitian(mat_, kEqTol)) {
    throw std::invalid_argument("DensityMatrix: not Hermitian");
  }
  if (std::abs(mat_.trace() - Complex{1.0, 0.0}) > kEqTol) {
    throw std::invalid_argument("DensityMatrix: trace != 1");
  }
  // PSD within tolerance; eigenvalues of the Hermitian part.
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (mat_ + mat_.adjoint()),
                                                  Eigen::EigenvaluesOnly);
  if (es.eigenvalues().minCoeff() < -kPsdTol) {
    throw std::invalid_argument("DensityMatrix: not positive semidefinite");
  }
}

DensityMatrix DensityMatrix::from_pure(const PureState& psi) {
  const ComplexVector& v = psi.amplitudes();
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(Eigen::Index dim) {
  check_dim_2_or_4(dim, "maximally_mixed");
  return DensityMatrix(identity(dim) / static_cast<double>(dim));
}

double BlochVector::norm() const { return std::sqrt(x * x + y * y + z * z); }

ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b) {
  ComplexMatrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

PureState tensor(const PureState& a, const PureState& b) {
  const ComplexVector& u = a.amplitudes();
  const ComplexVector& v = b.amplitudes();
  ComplexVector out(u.size() * v.size());
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    out.segment(i * v.size(), v.size()) = u(i) * v;
  }
  return PureState(std::move(out));
}

DensityMatrix partial_trace(const DensityMatrix& rho, Qubit keep) {
  if (rho.dim() != 4) {
    throw std::invalid_argument("partial_trace: expected a 4x4 state");
  }
  const ComplexMatrix& m = rho.matrix();
  ComplexMatrix out = ComplexMatrix::Zero(2, 2);
  for (Eigen::Index i = 0; i < 2; ++i) {
    for (Eigen::Index j = 0; j < 2; ++j) {
      for (Eigen::Index k = 0; k < 2; ++k) {
        if (keep == Qubit::A) {
          out(i, j) += m(2 * i + k, 2 * j + k);
        } else {
          out(i, j) += m(2 * k + i, 2 * k + j);
        }
      }
    }
  }
  return DensityMatrix(std::move(out));
}

DensityMatrix evolve(const DensityMatrix& rho, const ComplexMatrix& u) {
  if (u.rows() != rho.dim() || u.cols() != rho.dim()) {
    throw std::invalid_argument("evolve: dimension mismatch");
  }
  return DensityMatrix(u * rho.matrix() * u.adjoint());
}

double expectation(const DensityMatrix& rho, const PauliObservable& obs) {
  ComplexMatrix op;
  if (rho.dim() == 2) {
    op = pauli(obs.axis);
  } else {
    op = obs.qubit == Qubit::A ? tensor(pauli(obs.axis), identity(2))
                               : tensor(identity(2), pauli(obs.axis));
  }
  const Complex value = (rho.matrix() * op).trace();
  if (std::abs(value.imag()) > kPsdTol) {
    throw std::runtime_error("expectation: non-negligible imaginary part");
  }
  return value.real();
}

double fidelity(const PureState& n, const DensityMatrix& rho) {
  if (n.dim() != rho.dim()) {
    throw std::invalid_argument("fidelity: dimension mismatch");
  }
  const ComplexVector& v = n.amplitudes();
  const Complex value = (v.adjoint() * rho.matrix() * v)(0, 0);
  if (std::abs(value.imag()) > kPsdTol) {
    throw std::runtime_error("fidelity: non-negligible imaginary part");
  }
  const double f = value.real();
  if (f < -kPsdTol || f > 1.0 + kPsdTol) {
    throw std::runtime_error("fidelity: value outside [0,1] beyond tolerance");
  }
  return std::clamp(f, 0.0, 1.0);
}

BlochVector bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) {
    throw std::invalid_argument("bloch: expected a single-qubit state");
  }
  return BlochVector{expectation(rho, {PauliAxis::X, Qubit::A}),
                     expectation(rho, {PauliAxis::Y, Qubit::A}),
                     expectation(rho, {PauliAxis::Z, Qubit::A})};
}

DensityMatrix density_from_bloch(const BlochVector& r) {
  if (r.x * r.x + r.y * r.y + r.z * r.z > 1.0 + kPsdTol) {
    throw std::invalid_argument("density_from_bloch: |r| > 1");
  }
  ComplexMatrix m = 0.5 * (identity(2) + r.x * pauli(PauliAxis::X) +
                           r.y * pauli(PauliAxis::Y) + r.z * pauli(PauliAxis::Z));
  return DensityMatrix(std::move(m));
}

}  // namespace qpccm
