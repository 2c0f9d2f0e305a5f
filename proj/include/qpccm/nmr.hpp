// SPDX-License-Identifier: Apache-2.0
//
// Two-spin NMR model: heteronuclear spin-system constants, compilation of
// the cloning circuit into hard pulses and J-coupling delays, ideal
// propagators, phenomenological T1/T2 relaxation, and synthetic readout
// spectra integrated per multiplet.
//
// Dynamics run in the doubly rotating frame: the Zeeman terms are dropped
// and only the 2*pi*J*Iz*Iz coupling evolves during delays. Carrier
// frequencies reappear solely as spectral offsets in synthesize_spectrum.

#pragma once

#include <string>
#include <vector>

#include "qpccm/cloner.hpp"
#include "qpccm/qcore.hpp"

namespace qpccm::nmr {

// Heteronuclear two-spin constants. Defaults are the 13C (spin a) / 1H
// (spin b) chloroform values.
struct SpinSystem {
  double omega_a = 1.0e8;      // Hz
  double omega_b = 4.0e8;      // Hz
  double j_coupling = 214.5;   // Hz
  double t1_a = 17.2;          // s
  double t2_a = 0.35;          // s
  double t1_b = 4.8;           // s
  double t2_b = 3.3;           // s

  // All constants positive and t2 <= 2*t1 per spin.
  void validate() const;
  double tau1() const { return 1.0 / (4.0 * j_coupling); }
};

inline constexpr double kHardPulseWidth = 5e-6;  // s

enum class PulseAxis { X, MinusX, Y, MinusY };

struct PulseElement {
  enum class Kind { HardPulse, Delay, GradientCrush };

  Kind kind;
  Qubit spin = Qubit::A;        // hard pulses only
  double flip = 0.0;            // radians, hard pulses only
  PulseAxis axis = PulseAxis::X;
  double duration = 0.0;        // s; fixed kHardPulseWidth for pulses

  static PulseElement pulse(Qubit spin, double flip, PulseAxis axis);
  static PulseElement delay(double seconds);
  static PulseElement gradient();
};

struct PulseSequence {
  std::vector<PulseElement> elements;

  double total_duration() const;
};

// Output of compile(). The sequence propagator P satisfies
//   build_unitary(theta) = e^{i global_phase} Rz_a(zframe_a) Rz_b(zframe_b) P
// with Rz(z) = exp(-i z sigma_z / 2); the z rotations are reference-frame
// corrections, not pulses.
struct CompiledSequence {
  PulseSequence sequence;
  double tau1;          // 1/(4J)
  double tau2;          // theta * tau1 / pi
  double global_phase;  // radians
  double zframe_a;      // radians
  double zframe_b;      // radians
};

// exp(-i 2 pi J t Iz Iz): diagonal with phases -/+ pi J t / 2 by basis parity.
ComplexMatrix coupling_propagator(const SpinSystem& sys, double t);

// Single-spin hard pulse as an instantaneous rotation, embedded in the
// two-qubit space.
ComplexMatrix pulse_rotation(Qubit spin, double flip, PulseAxis axis);

// Rz_a(za) (x) Rz_b(zb), for applying declared frame corrections.
ComplexMatrix frame_rotation(double za, double zb);

// Compile a CNOT / controlled-Ry gate list into hard pulses and delays.
// Delays are emitted as tau1 blocks (CNOT) and quarter blocks of each
// controlled rotation's coupling time (tau2 blocks for the canonical list).
CompiledSequence compile(const GateList& gates, CloneAngle theta,
                         const SpinSystem& sys);

// Product of element unitaries in order. Hard pulses are instantaneous by
// default; with couple_during_pulses the 5 us width contributes coupling in
// a symmetric split around the rotation. Gradient markers are identity.
ComplexMatrix ideal_propagator(const PulseSequence& seq, const SpinSystem& sys,
                               bool couple_during_pulses = false);

// Interleave each element's unitary with a per-spin phenomenological
// relaxation channel over the element's duration: single-spin coherences
// damp by exp(-t/T2) of that spin, two-spin coherences by the product, and
// populations relax toward the maximally mixed state at rate 1/T1.
DensityMatrix simulate_relaxed(const DensityMatrix& rho_in,
                               const PulseSequence& seq, const SpinSystem& sys);

// Undo the compiled sequence's declared z-frames (and global phase) so the
// simulated output lives in the same frame as build_unitary(theta).
DensityMatrix apply_frame_correction(const CompiledSequence& cs,
                                     const DensityMatrix& rho);

struct RelaxedCloneResult {
  double f_a;
  double f_b;
  double duration;  // s
};

// End-to-end relaxed cloning: compile decompose(theta), evolve
// |n(phi)>|0> with relaxation, correct frames, reduce, score.
RelaxedCloneResult relaxed_clone_fidelities(EquatorialPhase phi,
                                            CloneAngle theta,
                                            const SpinSystem& sys);

struct AcquisitionConfig {
  int n_samples = 4096;        // power of two, >= 2
  double dwell_time = 2e-4;    // s
  double reference_phase = 0;  // radians, receiver phase

  void validate() const;
};

struct Spectrum {
  std::vector<double> frequencies;  // Hz, offsets from the spin's carrier
  std::vector<Complex> amplitudes;
  double multiplet_integral;        // integral of Re over the full multiplet
  double carrier_hz;                // omega of the observed spin
};

// Free-induction signal s(t) = Tr(rho(t) (sx + i sy)^spin) e^{i ref_phase}
// sampled under coupling evolution and relaxation, then Fourier transformed.
// The two multiplet lines sit at -/+ J/2 around the carrier. Rejects
// configurations that cannot resolve the J splitting (spacing < 2 bins).
Spectrum synthesize_spectrum(const DensityMatrix& rho, Qubit spin,
                             const SpinSystem& sys,
                             const AcquisitionConfig& acq);

// Line-oriented sequence listing: `PULSE <spin> <flip_deg> <axis> 5e-06`,
// `DELAY <seconds>`, `GRAD`; numbers carry 9 significant digits.
std::string write_listing(const PulseSequence& seq);
PulseSequence parse_listing(const std::string& text);

// Unnormalized thermal-equilibrium deviation operator sigma_z^a +
// 4 sigma_z^b (the factor 4 is the 1H/13C frequency ratio). Traceless, not
// a density matrix; recorded for reference only, no operation consumes it.
ComplexMatrix thermal_deviation_operator();

}  // namespace qpccm::nmr
