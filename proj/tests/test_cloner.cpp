// SPDX-License-Identifier: Apache-2.0

#include "qpccm/cloner.hpp"

#include <cmath>
#include <numbers>

#include "doctest.h"
#include "test_helpers.hpp"

using namespace qpccm;
using qpccm::testing::make_rng;

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kOptimalFidelity = 0.8535533905932738;  // 1/2 + sqrt(2)/4

std::vector<double> theta_grid_24() {
  std::vector<double> grid(24);
  for (int n = 0; n < 24; ++n) grid[n] = n * kPi / 12.0;
  return grid;
}

}  // namespace

TEST_CASE("build_unitary: limits and structure") {
  CHECK(approx_equal(build_unitary(CloneAngle(0.0)), identity(4)));

  const ComplexMatrix u = build_unitary(CloneAngle::optimal());
  const double c = std::numbers::sqrt2 / 2.0;
  CHECK(std::abs(u(1, 1) - Complex{c, 0.0}) < kEqTol);
  CHECK(std::abs(u(1, 2) - Complex{c, 0.0}) < kEqTol);
  CHECK(std::abs(u(2, 1) - Complex{-c, 0.0}) < kEqTol);
  CHECK(std::abs(u(2, 2) - Complex{c, 0.0}) < kEqTol);
  CHECK(std::abs(u(0, 0) - Complex{1.0, 0.0}) < kEqTol);
  CHECK(std::abs(u(3, 3) - Complex{1.0, 0.0}) < kEqTol);
}

TEST_CASE("build_unitary: rotation group inverse and unitarity") {
  auto rng = make_rng(10);
  std::uniform_real_distribution<double> angle(-10.0, 10.0);
  for (int trial = 0; trial < 50; ++trial) {
    const double theta = angle(rng);
    const ComplexMatrix u = build_unitary(CloneAngle(theta));
    CHECK(approx_equal(u * build_unitary(CloneAngle(-theta)), identity(4)));
    CHECK(is_unitary(u, kEqTol));
  }
}

TEST_CASE("decompose: three gates reproduce the unitary exactly") {
  for (const double theta : theta_grid_24()) {
    const GateList gates = decompose(CloneAngle(theta));
    REQUIRE(gates.size() == 3);
    CHECK(gates[0].kind == GateKind::Cnot);
    CHECK(gates[1].kind == GateKind::ControlledRy);
    CHECK(gates[2].kind == GateKind::Cnot);
    // Matrix-multiplication oracle against the direct construction; no
    // residual global phase allowed.
    CHECK(max_abs_diff(circuit_unitary(gates),
                       build_unitary(CloneAngle(theta))) < kEqTol);
  }
}

TEST_CASE("decompose: theta = 0 collapses to the identity") {
  CHECK(approx_equal(circuit_unitary(decompose(CloneAngle(0.0))), identity(4)));
}

TEST_CASE("decompose: theta = pi/3") {
  const double theta = kPi / 3.0;
  CHECK(max_abs_diff(circuit_unitary(decompose(CloneAngle(theta))),
                     build_unitary(CloneAngle(theta))) < kEqTol);
}

TEST_CASE("clone: optimal point reproduces the reduced state") {
  const CloneResult r = clone(EquatorialPhase(0.0), CloneAngle::optimal());
  ComplexMatrix expected(2, 2);
  const double off = std::numbers::sqrt2 / 4.0;
  expected << 0.75, off, off, 0.25;
  CHECK(max_abs_diff(r.rho_a.matrix(), expected) < kEqTol);
  CHECK(std::abs(r.f_a - kOptimalFidelity) < 1e-10);
  CHECK(std::abs(r.f_b - kOptimalFidelity) < 1e-10);
  // The two copies are symmetric at the optimum.
  CHECK(max_abs_diff(r.rho_a.matrix(), r.rho_b.matrix()) < kEqTol);
}

TEST_CASE("clone: general phase keeps the paper form of rho_a") {
  for (const double phi : {0.3, 2.0, 5.5}) {
    const CloneResult r = clone(EquatorialPhase(phi), CloneAngle::optimal());
    ComplexMatrix expected(2, 2);
    const Complex off =
        std::numbers::sqrt2 / 4.0 * std::exp(Complex{0.0, -phi});
    expected << 0.75, off, std::conj(off), 0.25;
    CHECK(max_abs_diff(r.rho_a.matrix(), expected) < kEqTol);
  }
}

TEST_CASE("clone: theta = 0 passes the input through") {
  const CloneResult r = clone(EquatorialPhase(1.2), CloneAngle(0.0));
  CHECK(r.f_a == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.f_b == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(max_abs_diff(r.rho_b.matrix(),
                     DensityMatrix::from_pure(PureState::basis(2, 0)).matrix()) <
        kEqTol);
}

TEST_CASE("clone: theta = pi/2 transfers the state") {
  const CloneResult r = clone(EquatorialPhase(1.2), CloneAngle(kPi / 2.0));
  CHECK(r.f_b == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(r.f_a == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(max_abs_diff(r.rho_a.matrix(),
                     DensityMatrix::from_pure(PureState::basis(2, 0)).matrix()) <
        kEqTol);
}

TEST_CASE("fidelity_closed_form matches the simulation for all phases") {
  const std::vector<double> phis = {0.0, 0.7, kPi / 2.0, 3.0, 5.9};
  for (const double theta : theta_grid_24()) {
    const auto [fa, fb] = fidelity_closed_form(CloneAngle(theta));
    for (const double phi : phis) {
      const CloneResult r = clone(EquatorialPhase(phi), CloneAngle(theta));
      CHECK(std::abs(r.f_a - fa) < kEqTol);
      CHECK(std::abs(r.f_b - fb) < kEqTol);
    }
  }
  const auto [fa, fb] = fidelity_closed_form(CloneAngle::optimal());
  CHECK(std::abs(fa - kOptimalFidelity) < 1e-10);
  CHECK(std::abs(fb - kOptimalFidelity) < 1e-10);
  CHECK(fidelity_closed_form(CloneAngle(0.0)).first == doctest::Approx(1.0));
  CHECK(fidelity_closed_form(CloneAngle(0.0)).second == doctest::Approx(0.5));
  CHECK(fidelity_closed_form(CloneAngle(kPi / 2.0)).first ==
        doctest::Approx(0.5));
  CHECK(fidelity_closed_form(CloneAngle(kPi / 2.0)).second ==
        doctest::Approx(1.0));
}

TEST_CASE("phase covariance: fidelities are phase independent") {
  auto rng = make_rng(11);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 20; ++trial) {
    const CloneAngle theta(angle(rng));
    double fa_min = 1.0, fa_max = 0.0, fb_min = 1.0, fb_max = 0.0;
    for (int n = 0; n < 24; ++n) {
      const CloneResult r = clone(EquatorialPhase(n * kPi / 12.0), theta);
      fa_min = std::min(fa_min, r.f_a);
      fa_max = std::max(fa_max, r.f_a);
      fb_min = std::min(fb_min, r.f_b);
      fb_max = std::max(fb_max, r.f_b);
    }
    CHECK(fa_max - fa_min < kEqTol);
    CHECK(fb_max - fb_min < kEqTol);
  }
}

TEST_CASE("phase covariance: rho(phi) is the z-rotated rho(0)") {
  const Complex i{0.0, 1.0};
  for (const double theta : {kPi / 4.0, 1.1, 2.9}) {
    const DensityMatrix base =
        clone(EquatorialPhase(0.0), CloneAngle(theta)).rho_ab;
    for (const double phi : {0.4, 1.9, 4.4}) {
      ComplexMatrix rz(2, 2);
      rz << std::exp(-i * (phi / 2.0)), 0.0, 0.0, std::exp(i * (phi / 2.0));
      const ComplexMatrix rot = tensor(rz, rz);
      const DensityMatrix rotated = evolve(base, rot);
      const DensityMatrix direct =
          clone(EquatorialPhase(phi), CloneAngle(theta)).rho_ab;
      CHECK(max_abs_diff(rotated.matrix(), direct.matrix()) < kEqTol);
    }
  }
}

TEST_CASE("no-cloning tradeoff circle") {
  auto rng = make_rng(12);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const CloneResult r = clone(EquatorialPhase(0.0), CloneAngle(angle(rng)));
    const double xa = 2.0 * r.f_a - 1.0;
    const double xb = 2.0 * r.f_b - 1.0;
    CHECK(std::abs(xa * xa + xb * xb - 1.0) < 1e-9);
  }
}

TEST_CASE("complement symmetry f_a(theta) = f_b(pi/2 - theta)") {
  auto rng = make_rng(13);
  std::uniform_real_distribution<double> angle(-2.0 * kPi, 2.0 * kPi);
  for (int trial = 0; trial < 100; ++trial) {
    const double theta = angle(rng);
    const auto [fa, fb] = fidelity_closed_form(CloneAngle(theta));
    const auto [fa2, fb2] =
        fidelity_closed_form(CloneAngle(kPi / 2.0 - theta));
    CHECK(std::abs(fa - fb2) < kEqTol);
    CHECK(std::abs(fb - fa2) < kEqTol);
  }
}

TEST_CASE("EquatorialPhase canonicalizes to [0, 2pi)") {
  CHECK(EquatorialPhase(-kPi / 2.0).radians() ==
        doctest::Approx(3.0 * kPi / 2.0));
  CHECK(EquatorialPhase(5.0 * kPi).radians() == doctest::Approx(kPi));
  CHECK(EquatorialPhase(0.0).radians() == 0.0);
  CHECK_THROWS_AS(EquatorialPhase(std::nan("")), std::invalid_argument);
  CHECK_THROWS_AS(CloneAngle(std::numeric_limits<double>::infinity()),
                  std::invalid_argument);
}
