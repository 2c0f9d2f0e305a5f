// SPDX-License-Identifier: Apache-2.0
//
// Four-state protocol with an eavesdropper who inserts the 1->2 cloning
// network of strength theta into the channel: analytic signal / QBER /
// mutual-information formulas plus a seeded Monte Carlo harness.
//
// Signal normalization: the plotted signal is s = Tr(rho sigma)/2, half the
// conventional Pauli expectation, so that F = 1/2 + s. Both forms are
// exposed: analytic_signals/curves return s, qcore::expectation returns the
// conventional value.

#pragma once

#include <cstdint>
#include <vector>

#include "qpccm/cloner.hpp"
#include "qpccm/qcore.hpp"

namespace qpccm::bb84 {

enum class Basis { X, Y };

struct Bb84State {
  int bit;      // 0 or 1
  Basis basis;
  PureState state;
};

// theta in [0, pi/2] reads as attack strength; any finite value is accepted
// for sweeps over [0, 2*pi].
struct AttackConfig {
  double theta;
};

// (|0> + |1>)/sqrt(2), (|0> - |1>)/sqrt(2) for X; the i-phased pair for Y.
Bb84State prepare(int bit, Basis basis);

// U(theta)(|psi><psi| (x) |0><0|)U(theta)^dagger; qubit a goes to Bob,
// qubit b stays with Eve.
DensityMatrix eve_intercept(const Bb84State& state, const AttackConfig& cfg);

struct Signals {
  double s_bob;  // +-cos(theta)/2, sign from the bit
  double s_eve;  // +-sin(theta)/2
};

Signals analytic_signals(double theta, int bit, Basis basis);

// QBER = (1 - cos theta)/2 and its inverse on [0, pi/2].
double qber_of_theta(double theta);
double theta_of_qber(double q);

// Binary-channel mutual information 1 + d log2 d + (1-d) log2(1-d), with
// 0 log 0 == 0; rejects d outside [0, 1].
double mutual_information(double d);

struct BasisCounts {
  std::int64_t sifted = 0;
  std::int64_t bob_errors = 0;
  std::int64_t eve_errors = 0;
};

struct ProtocolReport {
  std::int64_t n_pulses = 0;
  std::int64_t n_sifted = 0;
  double qber_bob = 0.0;
  double eve_error = 0.0;
  double i_ab = 0.0;
  double i_ae = 0.0;
  std::uint64_t seed = 0;
  BasisCounts basis_x;
  BasisCounts basis_y;
};

// Per pulse (one RNG substream each, five draws in frozen order: Alice bit,
// Alice basis, Bob basis, Bob outcome, Eve outcome): Alice sends a random
// state, Eve clones, Bob measures in a random basis, matched-basis rounds
// are kept, Eve measures her copy in the announced basis. Deterministic for
// a fixed seed regardless of evaluation order.
ProtocolReport run_protocol(std::int64_t n_pulses, const AttackConfig& cfg,
                            std::uint64_t seed);

struct CurveRow {
  double theta;
  int bit;
  Basis basis;
  double s_bob;
  double s_eve;
  double qber;
  double i_ab;
  double i_ae;
};

using CurveTable = std::vector<CurveRow>;

// 24 points spaced pi/12 over [0, 2*pi).
std::vector<double> default_theta_grid();

// One row per (theta, state), thetas ascending, states in the order
// +x, -x, +y, -y.
CurveTable curves(std::vector<double> theta_grid);

}  // namespace qpccm::bb84
