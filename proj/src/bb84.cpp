// SPDX-License-Identifier: Apache-2.0

#include "qpccm/bb84.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "qpccm/rng.hpp"

namespace qpccm::bb84 {

namespace {

constexpr double kPi = std::numbers::pi;

double sign_of(int bit) { return bit == 0 ? 1.0 : -1.0; }

double check_bit(int bit) {
  if (bit != 0 && bit != 1) {
    throw std::invalid_argument("bb84: bit must be 0 or 1");
  }
  return sign_of(bit);
}

// Probability that a projective measurement in `basis` yields outcome 0.
double prob_outcome0(const DensityMatrix& rho, Basis basis) {
  return fidelity(prepare(0, basis).state, rho);
}

}  // namespace

Bb84State prepare(int bit, Basis basis) {
  check_bit(bit);
  // X states are equatorial with phi = 0, pi; Y states with phi = pi/2, 3pi/2.
  const double phi = (basis == Basis::X ? 0.0 : kPi / 2.0) + bit * kPi;
  return Bb84State{bit, basis, PureState::equatorial(phi)};
}

DensityMatrix eve_intercept(const Bb84State& state, const AttackConfig& cfg) {
  const PureState joint = tensor(state.state, PureState::basis(2, 0));
  return evolve(DensityMatrix::from_pure(joint),
                build_unitary(CloneAngle(cfg.theta)));
}

Signals analytic_signals(double theta, int bit, Basis basis) {
  (void)basis;  // X and Y curves coincide; the cloner is phase covariant.
  const double s = check_bit(bit);
  return Signals{s * std::cos(theta) / 2.0, s * std::sin(theta) / 2.0};
}

double qber_of_theta(double theta) { return (1.0 - std::cos(theta)) / 2.0; }

double theta_of_qber(double q) {
  if (!(q >= 0.0 && q <= 0.5)) {
    throw std::invalid_argument("theta_of_qber: q must lie in [0, 1/2]");
  }
  return std::acos(1.0 - 2.0 * q);
}

double mutual_information(double d) {
  if (!(d >= 0.0 && d <= 1.0)) {
    throw std::invalid_argument("mutual_information: d must lie in [0, 1]");
  }
  const auto xlog2x = [](double x) {
    return x > 0.0 ? x * std::log2(x) : 0.0;
  };
  return 1.0 + xlog2x(d) + xlog2x(1.0 - d);
}

ProtocolReport run_protocol(std::int64_t n_pulses, const AttackConfig& cfg,
                            std::uint64_t seed) {
  if (n_pulses < 1) {
    throw std::invalid_argument("run_protocol: n_pulses must be >= 1");
  }

  // The channel output depends only on (basis, bit), so the Born
  // probabilities for all four inputs are precomputed.
  double p0_bob[2][2][2];  // [alice basis][bit][bob basis]
  double p0_eve[2][2];     // [alice basis][bit]
  for (int basis = 0; basis < 2; ++basis) {
    for (int bit = 0; bit < 2; ++bit) {
      const Basis ab = basis == 0 ? Basis::X : Basis::Y;
      const DensityMatrix rho = eve_intercept(prepare(bit, ab), cfg);
      const DensityMatrix rho_bob = partial_trace(rho, Qubit::A);
      const DensityMatrix rho_eve = partial_trace(rho, Qubit::B);
      p0_bob[basis][bit][0] = prob_outcome0(rho_bob, Basis::X);
      p0_bob[basis][bit][1] = prob_outcome0(rho_bob, Basis::Y);
      p0_eve[basis][bit] = prob_outcome0(rho_eve, ab);
    }
  }

  ProtocolReport report;
  report.n_pulses = n_pulses;
  report.seed = seed;
  for (std::int64_t i = 0; i < n_pulses; ++i) {
    SubstreamRng rng(seed, static_cast<std::uint64_t>(i));
    const int alice_bit = rng.next_unit() < 0.5 ? 0 : 1;
    const int alice_basis = rng.next_unit() < 0.5 ? 0 : 1;
    const int bob_basis = rng.next_unit() < 0.5 ? 0 : 1;
    const int bob_bit =
        rng.next_unit() < p0_bob[alice_basis][alice_bit][bob_basis] ? 0 : 1;
    const int eve_bit = rng.next_unit() < p0_eve[alice_basis][alice_bit] ? 0 : 1;
    if (bob_basis != alice_basis) continue;
    BasisCounts& counts = alice_basis == 0 ? report.basis_x : report.basis_y;
    ++counts.sifted;
    counts.bob_errors += bob_bit != alice_bit;
    counts.eve_errors += eve_bit != alice_bit;
  }

  report.n_sifted = report.basis_x.sifted + report.basis_y.sifted;
  const std::int64_t bob_errors =
      report.basis_x.bob_errors + report.basis_y.bob_errors;
  const std::int64_t eve_errors =
      report.basis_x.eve_errors + report.basis_y.eve_errors;
  if (report.n_sifted > 0) {
    report.qber_bob =
        static_cast<double>(bob_errors) / static_cast<double>(report.n_sifted);
    report.eve_error =
        static_cast<double>(eve_errors) / static_cast<double>(report.n_sifted);
  }
  report.i_ab = mutual_information(report.qber_bob);
  report.i_ae = mutual_information(report.eve_error);
  return report;
}

std::vector<double> default_theta_grid() {
  std::vector<double> grid(24);
  for (int n = 0; n < 24; ++n) grid[static_cast<std::size_t>(n)] = n * kPi / 12.0;
  return grid;
}

CurveTable curves(std::vector<double> theta_grid) {
  if (theta_grid.empty()) {
    throw std::invalid_argument("curves: empty theta grid");
  }
  std::sort(theta_grid.begin(), theta_grid.end());
  CurveTable table;
  table.reserve(theta_grid.size() * 4);
  for (const double theta : theta_grid) {
    const double qber = qber_of_theta(theta);
    const double eve_d = (1.0 - std::sin(theta)) / 2.0;
    const double i_ab = mutual_information(qber);
    const double i_ae = mutual_information(eve_d);
    for (const Basis basis : {Basis::X, Basis::Y}) {
      for (const int bit : {0, 1}) {
        const Signals s = analytic_signals(theta, bit, basis);
        table.push_back(
            CurveRow{theta, bit, basis, s.s_bob, s.s_eve, qber, i_ab, i_ae});
      }
    }
  }
  return table;
}

}  // namespace qpccm::bb84
