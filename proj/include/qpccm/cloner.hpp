// SPDX-License-Identifier: Apache-2.0
//
// The 1->2 equatorial-state cloning network U(theta): direct matrix
// construction, decomposition into a 3-gate circuit, application to
// equatorial inputs, and closed-form fidelities.

#pragma once

#include <numbers>
#include <utility>
#include <vector>

#include "qpccm/qcore.hpp"

namespace qpccm {

inline constexpr double kOptimalTheta = std::numbers::pi / 4.0;

// Rotation angle of the cloning network; any finite value is accepted.
class CloneAngle {
 public:
  explicit CloneAngle(double radians);
  // The optimal working point theta = pi/4.
  static CloneAngle optimal() { return CloneAngle(kOptimalTheta); }
  double radians() const { return theta_; }

 private:
  double theta_;
};

// Phase of an equatorial input state, canonicalized to [0, 2*pi).
class EquatorialPhase {
 public:
  explicit EquatorialPhase(double radians);
  double radians() const { return phi_; }

 private:
  double phi_;
};

enum class GateKind { Cnot, ControlledRy };

struct Gate {
  GateKind kind;
  Qubit control;
  Qubit target;
  double angle = 0.0;  // ControlledRy only; R_y(angle) = exp(-i angle sigma_y / 2)
};

// Gates listed in application order; the circuit unitary is the
// reverse-order matrix product.
using GateList = std::vector<Gate>;

ComplexMatrix gate_matrix(const Gate& g);
ComplexMatrix circuit_unitary(const GateList& gates);

struct CloneResult {
  DensityMatrix rho_ab;
  DensityMatrix rho_a;
  DensityMatrix rho_b;
  double f_a;
  double f_b;
};

// The network unitary: identity on |00>,|11>, the rotation block
// [[cos, sin], [-sin, cos]] on {|01>,|10>}.
ComplexMatrix build_unitary(CloneAngle theta);

// CNOT, controlled-Ry, CNOT whose product equals build_unitary(theta)
// exactly (no residual global phase).
GateList decompose(CloneAngle theta);

// Apply U(theta) to |n(phi)>_a (x) |0>_b.
CloneResult clone(EquatorialPhase phi, CloneAngle theta);

// (f_a, f_b) = ((1+cos theta)/2, (1+sin theta)/2); phase independent.
std::pair<double, double> fidelity_closed_form(CloneAngle theta);

}  // namespace qpccm
