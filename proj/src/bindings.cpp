// SPDX-License-Identifier: Apache-2.0
//
// Python bindings for the main operations: cloning, gate decomposition,
// pulse compilation, relaxation, spectra, and the protocol harness.

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "qpccm/bb84.hpp"
#include "qpccm/cloner.hpp"
#include "qpccm/nmr.hpp"
#include "qpccm/qcore.hpp"
#include "qpccm/rng.hpp"

namespace py = pybind11;
using namespace qpccm;

namespace {

Qubit qubit_from(const std::string& name) {
  if (name == "a") return Qubit::A;
  if (name == "b") return Qubit::B;
  throw std::invalid_argument("qubit must be 'a' or 'b'");
}

PauliAxis axis_from(const std::string& name) {
  if (name == "x") return PauliAxis::X;
  if (name == "y") return PauliAxis::Y;
  if (name == "z") return PauliAxis::Z;
  throw std::invalid_argument("axis must be 'x', 'y' or 'z'");
}

bb84::Basis basis_from(const std::string& name) {
  if (name == "x") return bb84::Basis::X;
  if (name == "y") return bb84::Basis::Y;
  throw std::invalid_argument("basis must be 'x' or 'y'");
}

std::string gate_name(GateKind kind) {
  return kind == GateKind::Cnot ? "cnot" : "cry";
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() =
      "Two-qubit phase-covariant cloning simulator: cloning network, NMR "
      "pulse-level model with T1/T2 relaxation, and a BB84 eavesdropping "
      "harness";
  m.attr("__version__") = "0.1.0";
  m.attr("RNG_ID") = kRngId;

  // ---- qcore ----
  m.def(
      "equatorial_state",
      [](double phi) { return PureState::equatorial(phi).amplitudes(); },
      py::arg("phi"), "Amplitudes of (|0> + e^{i phi}|1>)/sqrt(2)");
  m.def(
      "partial_trace",
      [](const ComplexMatrix& rho, const std::string& keep) {
        return partial_trace(DensityMatrix(rho), qubit_from(keep)).matrix();
      },
      py::arg("rho"), py::arg("keep"),
      "Reduced 2x2 state of the kept qubit of a 4x4 density matrix");
  m.def(
      "expectation",
      [](const ComplexMatrix& rho, const std::string& axis,
         const std::string& qubit) {
        return expectation(DensityMatrix(rho),
                           {axis_from(axis), qubit_from(qubit)});
      },
      py::arg("rho"), py::arg("axis"), py::arg("qubit") = "a",
      "Conventional Pauli expectation Tr(rho sigma)");
  m.def(
      "fidelity",
      [](const ComplexVector& state, const ComplexMatrix& rho) {
        return fidelity(PureState(state), DensityMatrix(rho));
      },
      py::arg("state"), py::arg("rho"), "<n|rho|n>");
  m.def(
      "bloch",
      [](const ComplexMatrix& rho) {
        const BlochVector r = bloch(DensityMatrix(rho));
        return py::make_tuple(r.x, r.y, r.z);
      },
      py::arg("rho"), "(<sx>, <sy>, <sz>) of a single-qubit state");

  // ---- cloner ----
  m.def(
      "build_unitary",
      [](double theta) { return build_unitary(CloneAngle(theta)); },
      py::arg("theta"), "The 4x4 cloning network unitary U(theta)");

  py::class_<Gate>(m, "Gate")
      .def_property_readonly("kind",
                             [](const Gate& g) { return gate_name(g.kind); })
      .def_property_readonly(
          "control",
          [](const Gate& g) { return g.control == Qubit::A ? "a" : "b"; })
      .def_property_readonly(
          "target",
          [](const Gate& g) { return g.target == Qubit::A ? "a" : "b"; })
      .def_readonly("angle", &Gate::angle)
      .def("matrix", [](const Gate& g) { return gate_matrix(g); })
      .def("__repr__", [](const Gate& g) {
        std::string s = gate_name(g.kind);
        s += "(control=" + std::string(g.control == Qubit::A ? "a" : "b");
        s += ", target=" + std::string(g.target == Qubit::A ? "a" : "b");
        if (g.kind == GateKind::ControlledRy) {
          s += ", angle=" + std::to_string(g.angle);
        }
        return s + ")";
      });

  m.def(
      "decompose",
      [](double theta) { return decompose(CloneAngle(theta)); },
      py::arg("theta"),
      "CNOT / controlled-Ry / CNOT gate list reproducing U(theta)");

  py::class_<CloneResult>(m, "CloneResult")
      .def_property_readonly(
          "rho_ab", [](const CloneResult& r) { return r.rho_ab.matrix(); })
      .def_property_readonly(
          "rho_a", [](const CloneResult& r) { return r.rho_a.matrix(); })
      .def_property_readonly(
          "rho_b", [](const CloneResult& r) { return r.rho_b.matrix(); })
      .def_readonly("f_a", &CloneResult::f_a)
      .def_readonly("f_b", &CloneResult::f_b);

  m.def(
      "clone",
      [](double phi, double theta) {
        return clone(EquatorialPhase(phi), CloneAngle(theta));
      },
      py::arg("phi") = 0.0, py::arg("theta") = kOptimalTheta,
      "Apply U(theta) to |n(phi)>|0> and reduce both clones");
  m.def(
      "fidelity_closed_form",
      [](double theta) { return fidelity_closed_form(CloneAngle(theta)); },
      py::arg("theta"), "((1+cos theta)/2, (1+sin theta)/2)");

  // ---- nmr ----
  py::class_<nmr::SpinSystem>(m, "SpinSystem")
      .def(py::init<>())
      .def_readwrite("omega_a", &nmr::SpinSystem::omega_a)
      .def_readwrite("omega_b", &nmr::SpinSystem::omega_b)
      .def_readwrite("j_coupling", &nmr::SpinSystem::j_coupling)
      .def_readwrite("t1_a", &nmr::SpinSystem::t1_a)
      .def_readwrite("t2_a", &nmr::SpinSystem::t2_a)
      .def_readwrite("t1_b", &nmr::SpinSystem::t1_b)
      .def_readwrite("t2_b", &nmr::SpinSystem::t2_b)
      .def("validate", &nmr::SpinSystem::validate)
      .def("tau1", &nmr::SpinSystem::tau1);

  py::class_<nmr::CompiledSequence>(m, "CompiledSequence")
      .def_readonly("tau1", &nmr::CompiledSequence::tau1)
      .def_readonly("tau2", &nmr::CompiledSequence::tau2)
      .def_readonly("global_phase", &nmr::CompiledSequence::global_phase)
      .def_readonly("zframe_a", &nmr::CompiledSequence::zframe_a)
      .def_readonly("zframe_b", &nmr::CompiledSequence::zframe_b)
      .def_property_readonly("total_duration",
                             [](const nmr::CompiledSequence& cs) {
                               return cs.sequence.total_duration();
                             })
      .def_property_readonly("n_elements",
                             [](const nmr::CompiledSequence& cs) {
                               return cs.sequence.elements.size();
                             })
      .def("listing", [](const nmr::CompiledSequence& cs) {
        return nmr::write_listing(cs.sequence);
      });

  m.def(
      "compile_sequence",
      [](double theta, const nmr::SpinSystem& sys) {
        return nmr::compile(decompose(CloneAngle(theta)), CloneAngle(theta),
                            sys);
      },
      py::arg("theta") = kOptimalTheta, py::arg("sys") = nmr::SpinSystem{},
      "Compile the cloning circuit into hard pulses and delays");
  m.def(
      "sequence_propagator",
      [](const nmr::CompiledSequence& cs, const nmr::SpinSystem& sys,
         bool frame_corrected) {
        const ComplexMatrix p = nmr::ideal_propagator(cs.sequence, sys);
        if (!frame_corrected) return p;
        return ComplexMatrix(nmr::frame_rotation(cs.zframe_a, cs.zframe_b) * p);
      },
      py::arg("compiled"), py::arg("sys") = nmr::SpinSystem{},
      py::arg("frame_corrected") = true,
      "Ideal propagator of a compiled sequence, optionally with the "
      "declared z-frames undone");
  m.def(
      "propagator_distance",
      [](double theta, const nmr::SpinSystem& sys) {
        const nmr::CompiledSequence cs =
            nmr::compile(decompose(CloneAngle(theta)), CloneAngle(theta), sys);
        const ComplexMatrix p = nmr::ideal_propagator(cs.sequence, sys);
        return phase_aligned_distance(
            build_unitary(CloneAngle(theta)),
            nmr::frame_rotation(cs.zframe_a, cs.zframe_b) * p);
      },
      py::arg("theta") = kOptimalTheta, py::arg("sys") = nmr::SpinSystem{},
      "Max-entry distance between U(theta) and the compiled propagator");
  m.def(
      "coupling_propagator",
      [](const nmr::SpinSystem& sys, double t) {
        return nmr::coupling_propagator(sys, t);
      },
      py::arg("sys"), py::arg("t"), "exp(-i 2 pi J t Iz Iz)");
  m.def(
      "relaxed_clone",
      [](double phi, double theta, const nmr::SpinSystem& sys) {
        const nmr::RelaxedCloneResult r = nmr::relaxed_clone_fidelities(
            EquatorialPhase(phi), CloneAngle(theta), sys);
        return py::make_tuple(r.f_a, r.f_b, r.duration);
      },
      py::arg("phi") = 0.0, py::arg("theta") = kOptimalTheta,
      py::arg("sys") = nmr::SpinSystem{},
      "(f_a, f_b, duration_s) of the pulse-level clone with relaxation");
  m.def(
      "synthesize_spectrum",
      [](const ComplexMatrix& rho, const std::string& spin,
         const nmr::SpinSystem& sys, int n_samples, double dwell_time,
         double reference_phase) {
        nmr::AcquisitionConfig acq;
        acq.n_samples = n_samples;
        acq.dwell_time = dwell_time;
        acq.reference_phase = reference_phase;
        const nmr::Spectrum s = nmr::synthesize_spectrum(
            DensityMatrix(rho), qubit_from(spin), sys, acq);
        py::dict out;
        out["frequencies"] = s.frequencies;
        out["amplitudes"] = s.amplitudes;
        out["multiplet_integral"] = s.multiplet_integral;
        out["carrier_hz"] = s.carrier_hz;
        return out;
      },
      py::arg("rho"), py::arg("spin") = "a",
      py::arg("sys") = nmr::SpinSystem{}, py::arg("n_samples") = 4096,
      py::arg("dwell_time") = 2e-4, py::arg("reference_phase") = 0.0,
      "Synthetic multiplet spectrum and its real-part integral");

  // ---- bb84 ----
  m.def(
      "prepare_state",
      [](int bit, const std::string& basis) {
        return bb84::prepare(bit, basis_from(basis)).state.amplitudes();
      },
      py::arg("bit"), py::arg("basis"), "One of the four protocol states");
  m.def(
      "eve_intercept",
      [](double theta, int bit, const std::string& basis) {
        return bb84::eve_intercept(bb84::prepare(bit, basis_from(basis)),
                                   bb84::AttackConfig{theta})
            .matrix();
      },
      py::arg("theta"), py::arg("bit"), py::arg("basis"),
      "Joint Bob/Eve state after the cloning attack");
  m.def(
      "analytic_signals",
      [](double theta, int bit, const std::string& basis) {
        const bb84::Signals s =
            bb84::analytic_signals(theta, bit, basis_from(basis));
        return py::make_tuple(s.s_bob, s.s_eve);
      },
      py::arg("theta"), py::arg("bit") = 0, py::arg("basis") = "x",
      "(s_bob, s_eve) = (+-cos(theta)/2, +-sin(theta)/2)");
  m.def("qber_of_theta", &bb84::qber_of_theta, py::arg("theta"));
  m.def("theta_of_qber", &bb84::theta_of_qber, py::arg("q"));
  m.def("mutual_information", &bb84::mutual_information, py::arg("d"));

  py::class_<bb84::BasisCounts>(m, "BasisCounts")
      .def_readonly("sifted", &bb84::BasisCounts::sifted)
      .def_readonly("bob_errors", &bb84::BasisCounts::bob_errors)
      .def_readonly("eve_errors", &bb84::BasisCounts::eve_errors);

  py::class_<bb84::ProtocolReport>(m, "ProtocolReport")
      .def_readonly("n_pulses", &bb84::ProtocolReport::n_pulses)
      .def_readonly("n_sifted", &bb84::ProtocolReport::n_sifted)
      .def_readonly("qber_bob", &bb84::ProtocolReport::qber_bob)
      .def_readonly("eve_error", &bb84::ProtocolReport::eve_error)
      .def_readonly("i_ab", &bb84::ProtocolReport::i_ab)
      .def_readonly("i_ae", &bb84::ProtocolReport::i_ae)
      .def_readonly("seed", &bb84::ProtocolReport::seed)
      .def_readonly("basis_x", &bb84::ProtocolReport::basis_x)
      .def_readonly("basis_y", &bb84::ProtocolReport::basis_y);

  m.def(
      "run_protocol",
      [](std::int64_t n_pulses, double theta, std::uint64_t seed) {
        return bb84::run_protocol(n_pulses, bb84::AttackConfig{theta}, seed);
      },
      py::arg("n_pulses"), py::arg("theta") = kOptimalTheta,
      py::arg("seed") = 42,
      "Seeded Monte Carlo protocol run (one RNG substream per pulse)");

  py::class_<bb84::CurveRow>(m, "CurveRow")
      .def_readonly("theta", &bb84::CurveRow::theta)
      .def_readonly("bit", &bb84::CurveRow::bit)
      .def_property_readonly("basis",
                             [](const bb84::CurveRow& r) {
                               return r.basis == bb84::Basis::X ? "x" : "y";
                             })
      .def_readonly("s_bob", &bb84::CurveRow::s_bob)
      .def_readonly("s_eve", &bb84::CurveRow::s_eve)
      .def_readonly("qber", &bb84::CurveRow::qber)
      .def_readonly("i_ab", &bb84::CurveRow::i_ab)
      .def_readonly("i_ae", &bb84::CurveRow::i_ae);

  m.def("default_theta_grid", &bb84::default_theta_grid,
        "24 points spaced pi/12 over [0, 2*pi)");
  m.def(
      "curves",
      [](const std::vector<double>& grid) { return bb84::curves(grid); },
      py::arg("theta_grid"),
      "Analytic signal/QBER/information rows, one per (theta, state)");
}
