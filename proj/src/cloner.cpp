// SPDX-License-Identifier: Apache-2.0

#include "qpccm/cloner.hpp"

#include <cmath>

namespace qpccm {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

int bit_of(Qubit q, int index) {
  return q == Qubit::A ? (index >> 1) & 1 : index & 1;
}

int flip_bit(Qubit q, int index) {
  return q == Qubit::A ? index ^ 2 : index ^ 1;
}

}  // namespace

CloneAngle::CloneAngle(double radians) : theta_(radians) {
  if (!std::isfinite(radians)) {
    throw std::invalid_argument("CloneAngle: non-finite angle");
  }
}

EquatorialPhase::EquatorialPhase(double radians) {
  if (!std::isfinite(radians)) {
    throw std::invalid_argument("EquatorialPhase: non-finite phase");
  }
  phi_ = std::fmod(radians, kTwoPi);
  if (phi_ < 0.0) phi_ += kTwoPi;
}

ComplexMatrix gate_matrix(const Gate& g) {
  if (g.control == g.target) {
    throw std::invalid_argument("gate_matrix: control == target");
  }
  ComplexMatrix m = ComplexMatrix::Zero(4, 4);
  switch (g.kind) {
    case GateKind::Cnot:
      for (int i = 0; i < 4; ++i) {
        const int j = bit_of(g.control, i) ? flip_bit(g.target, i) : i;
        m(j, i) = 1.0;
      }
      break;
    case GateKind::ControlledRy: {
      const double c = std::cos(g.angle / 2.0);
      const double s = std::sin(g.angle / 2.0);
      for (int i = 0; i < 4; ++i) {
        if (!bit_of(g.control, i)) {
          m(i, i) = 1.0;
        } else if (!bit_of(g.target, i)) {
          const int j = flip_bit(g.target, i);  // target 0 -> 1
          m(i, i) = c;
          m(j, i) = s;
          m(i, j) = -s;
          m(j, j) = c;
        }
      }
      break;
    }
  }
  return m;
}

ComplexMatrix circuit_unitary(const GateList& gates) {
  ComplexMatrix u = identity(4);
  for (const Gate& g : gates) {
    u = gate_matrix(g) * u;
  }
  return u;
}

ComplexMatrix build_unitary(CloneAngle theta) {
  const double c = std::cos(theta.radians());
  const double s = std::sin(theta.radians());
  ComplexMatrix u = identity(4);
  u(1, 1) = c;
  u(1, 2) = s;
  u(2, 1) = -s;
  u(2, 2) = c;
  return u;
}

GateList decompose(CloneAngle theta) {
  return {
      Gate{GateKind::Cnot, Qubit::A, Qubit::B},
      Gate{GateKind::ControlledRy, Qubit::B, Qubit::A, -2.0 * theta.radians()},
      Gate{GateKind::Cnot, Qubit::A, Qubit::B},
  };
}

CloneResult clone(EquatorialPhase phi, CloneAngle theta) {
  const PureState input = PureState::equatorial(phi.radians());
  const PureState joint = tensor(input, PureState::basis(2, 0));
  DensityMatrix rho_ab = evolve(DensityMatrix::from_pure(joint),
                                build_unitary(theta));
  DensityMatrix rho_a = partial_trace(rho_ab, Qubit::A);
  DensityMatrix rho_b = partial_trace(rho_ab, Qubit::B);
  const double f_a = fidelity(input, rho_a);
  const double f_b = fidelity(input, rho_b);
  return CloneResult{std::move(rho_ab), std::move(rho_a), std::move(rho_b),
                     f_a, f_b};
}

std::pair<double, double> fidelity_closed_form(CloneAngle theta) {
  return {0.5 * (1.0 + std::cos(theta.radians())),
          0.5 * (1.0 + std::sin(theta.radians()))};
}

}  // namespace qpccm
