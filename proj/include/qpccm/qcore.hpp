// SPDX-License-Identifier: Apache-2.0
//
// Exact small-dimension complex linear algebra and quantum-state primitives:
// tensor products, unitary conjugation, partial trace, Pauli expectations,
// fidelity and Bloch-vector conversion. Everything here is a pure function
// over immutable values; dimensions are 2 or 4 only.

#pragma once

#include <complex>
#include <stdexcept>

#include <Eigen/Dense>

namespace qpccm {

using Complex = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;

// One global pair of absolute tolerances; the matrices are at most 4x4 so
// double precision leaves ample headroom.
inline constexpr double kEqTol = 1e-12;    // entrywise equality / trace / norm
inline constexpr double kPsdTol = 1e-10;   // eigenvalue floor, bound slack

// Qubit labels. Basis ordering is |ab> with index 2*a_bit + b_bit, i.e.
// |00>, |01>, |10>, |11>; qubit a is always the leftmost tensor factor.
enum class Qubit { A, B };

enum class PauliAxis { X, Y, Z };

struct PauliObservable {
  PauliAxis axis;
  Qubit qubit;
};

const ComplexMatrix& pauli(PauliAxis axis);
ComplexMatrix identity(Eigen::Index dim);

bool approx_equal(const ComplexMatrix& a, const ComplexMatrix& b,
                  double tol = kEqTol);
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
bool is_hermitian(const ComplexMatrix& m, double tol = kEqTol);
bool is_unitary(const ComplexMatrix& m, double tol = kEqTol);

// Distance up to a global phase: min over phi of max|a - e^{i phi} b|.
double phase_aligned_distance(const ComplexMatrix& a, const ComplexMatrix& b);

// Normalized state vector of dimension 2 or 4.
class PureState {
 public:
  explicit PureState(ComplexVector amplitudes);

  // Computational basis state |index> of the given dimension.
  static PureState basis(Eigen::Index dim, Eigen::Index index);
  // Equatorial state (|0> + e^{i phi}|1>)/sqrt(2).
  static PureState equatorial(double phi);

  const ComplexVector& amplitudes() const { return amp_; }
  Eigen::Index dim() const { return amp_.size(); }

 private:
  ComplexVector amp_;
};

// Density matrix of dimension 2 or 4. The constructor enforces Hermiticity
// and unit trace within kEqTol and positive semidefiniteness within kPsdTol.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  static DensityMatrix from_pure(const PureState& psi);
  static DensityMatrix maximally_mixed(Eigen::Index dim);

  const ComplexMatrix& matrix() const { return mat_; }
  Eigen::Index dim() const { return mat_.rows(); }

 private:
  ComplexMatrix mat_;
};

struct BlochVector {
  double x = 0.0;
  double y = 0.0;
  double z = 0.0;

  double norm() const;
};

// Kronecker product, qubit-a factors leftmost.
ComplexMatrix tensor(const ComplexMatrix& a, const ComplexMatrix& b);
PureState tensor(const PureState& a, const PureState& b);

// Trace out the other qubit of a two-qubit state; `keep` names the survivor.
DensityMatrix partial_trace(const DensityMatrix& rho, Qubit keep);

// U rho U^dagger.
DensityMatrix evolve(const DensityMatrix& rho, const ComplexMatrix& u);

// Tr(rho sigma). The observable is embedded on the named qubit for 4x4
// states and acts directly for 2x2 states. A residual imaginary part above
// kPsdTol indicates a construction bug and throws.
double expectation(const DensityMatrix& rho, const PauliObservable& obs);

// <n|rho|n>, clamped to [0,1] after asserting bounds within kPsdTol.
double fidelity(const PureState& n, const DensityMatrix& rho);

// (<sigma_x>, <sigma_y>, <sigma_z>) of a single-qubit state.
BlochVector bloch(const DensityMatrix& rho);
DensityMatrix density_from_bloch(const BlochVector& r);

}  // namespace qpccm
