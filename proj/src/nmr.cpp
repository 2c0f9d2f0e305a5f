// SPDX-License-Identifier: Apache-2.0

#include "qpccm/nmr.hpp"

#include <cmath>
#include <cstdio>
#include <numbers>
#include <sstream>

namespace qpccm::nmr {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kTwoPi = 2.0 * kPi;
const Complex kI{0.0, 1.0};

int bit_a(int index) { return (index >> 1) & 1; }
int bit_b(int index) { return index & 1; }

void check_positive(double v, const char* what) {
  if (!(v > 0.0) || !std::isfinite(v)) {
    throw std::invalid_argument(std::string("SpinSystem: ") + what +
                                " must be positive and finite");
  }
}

double axis_angle(PulseAxis a) {
  switch (a) {
    case PulseAxis::X: return 0.0;
    case PulseAxis::Y: return kPi / 2.0;
    case PulseAxis::MinusX: return kPi;
    default: return 3.0 * kPi / 2.0;
  }
}

PulseAxis axis_from_angle(double phi) {
  phi = std::fmod(phi, kTwoPi);
  if (phi < 0.0) phi += kTwoPi;
  const int quarter = static_cast<int>(std::lround(phi / (kPi / 2.0))) % 4;
  if (std::abs(phi - quarter * kPi / 2.0) > 1e-9 &&
      std::abs(phi - kTwoPi) > 1e-9) {
    throw std::logic_error("compile: pulse axis left the quarter-phase grid");
  }
  switch (quarter) {
    case 0: return PulseAxis::X;
    case 1: return PulseAxis::Y;
    case 2: return PulseAxis::MinusX;
    default: return PulseAxis::MinusY;
  }
}

// Pending reference-frame corrections accumulated while emitting pulses.
// Invariant: circuit so far = e^{i gp} Rz_a(za) Rz_b(zb) * emitted product.
struct FrameState {
  double gp = 0.0;
  double za = 0.0;
  double zb = 0.0;

  double& z(Qubit q) { return q == Qubit::A ? za : zb; }
};

// Emit a pulse whose nominal axis is shifted by the pending z-frame of its
// spin; negative flips are folded into the opposite axis.
void emit_pulse(std::vector<PulseElement>& out, FrameState& f, Qubit spin,
                double flip, PulseAxis nominal) {
  double phi = axis_angle(nominal);
  if (flip < 0.0) {
    flip = -flip;
    phi += kPi;
  }
  if (flip < 1e-15) return;
  out.push_back(PulseElement::pulse(spin, flip, axis_from_angle(phi - f.z(spin))));
}

void emit_delays(std::vector<PulseElement>& out, double chunk, int count) {
  if (chunk < 1e-15) return;
  for (int i = 0; i < count; ++i) out.push_back(PulseElement::delay(chunk));
}

// CNOT(c->t) = e^{i pi/4} Rz_c(pi/2) Rz_t(-pi/2)
//              * Rx_t(pi/2) U_J(1/(2J)) Ry_t(pi/2).
void emit_cnot(std::vector<PulseElement>& out, FrameState& f, const Gate& g,
               const SpinSystem& sys) {
  emit_pulse(out, f, g.target, kPi / 2.0, PulseAxis::Y);
  emit_delays(out, sys.tau1(), 2);
  emit_pulse(out, f, g.target, kPi / 2.0, PulseAxis::X);
  f.gp += kPi / 4.0;
  f.z(g.control) += kPi / 2.0;
  f.z(g.target) -= kPi / 2.0;
}

// CRy(c->t, alpha) = Ry_t(alpha/2) Rx_t(-pi/2) exp(i alpha IzIz) Rx_t(pi/2);
// the coupling factor maps onto a delay of (-alpha/(2 pi J)) mod (4/J),
// matching the operator's 8*pi periodicity exactly (no phase residue).
void emit_controlled_ry(std::vector<PulseElement>& out, FrameState& f,
                        const Gate& g, const SpinSystem& sys) {
  const double period = 4.0 / sys.j_coupling;
  double tj = std::fmod(-g.angle / (kTwoPi * sys.j_coupling), period);
  if (tj < 0.0) tj += period;
  if (period - tj < 1e-15) tj = 0.0;
  emit_pulse(out, f, g.target, kPi / 2.0, PulseAxis::X);
  emit_delays(out, tj / 4.0, 4);
  emit_pulse(out, f, g.target, kPi / 2.0, PulseAxis::MinusX);
  emit_pulse(out, f, g.target, g.angle / 2.0, PulseAxis::Y);
}

// Shift an angle into (-pi, pi], compensating the global phase for the sign
// flip Rz picks up per 2*pi turn.
void canonicalize_frame(double& z, double& gp) {
  while (z > kPi) {
    z -= kTwoPi;
    gp += kPi;
  }
  while (z <= -kPi) {
    z += kTwoPi;
    gp += kPi;
  }
}

void apply_relaxation(ComplexMatrix& m, const SpinSystem& sys, double t) {
  if (t <= 0.0) return;
  const double fa = std::exp(-t / sys.t2_a);
  const double fb = std::exp(-t / sys.t2_b);
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (r == c) continue;
      double factor = 1.0;
      if (bit_a(r) != bit_a(c)) factor *= fa;
      if (bit_b(r) != bit_b(c)) factor *= fb;
      m(r, c) *= factor;
    }
  }
  // Populations toward maximally mixed: damp the z_a, z_b, z_a z_b
  // components of the diagonal at the T1 rates.
  const double p0 = m(0, 0).real(), p1 = m(1, 1).real();
  const double p2 = m(2, 2).real(), p3 = m(3, 3).real();
  const double tr = p0 + p1 + p2 + p3;
  double za = (p0 + p1 - p2 - p3) * std::exp(-t / sys.t1_a);
  double zb = (p0 - p1 + p2 - p3) * std::exp(-t / sys.t1_b);
  double zz = (p0 - p1 - p2 + p3) * std::exp(-t / sys.t1_a - t / sys.t1_b);
  m(0, 0) = (tr + za + zb + zz) / 4.0;
  m(1, 1) = (tr + za - zb - zz) / 4.0;
  m(2, 2) = (tr - za + zb - zz) / 4.0;
  m(3, 3) = (tr - za - zb + zz) / 4.0;
}

ComplexMatrix element_unitary(const PulseElement& e, const SpinSystem& sys,
                              bool couple_during_pulses) {
  switch (e.kind) {
    case PulseElement::Kind::HardPulse: {
      ComplexMatrix r = pulse_rotation(e.spin, e.flip, e.axis);
      if (couple_during_pulses) {
        const ComplexMatrix half = coupling_propagator(sys, e.duration / 2.0);
        return half * r * half;
      }
      return r;
    }
    case PulseElement::Kind::Delay:
      return coupling_propagator(sys, e.duration);
    default:
      return identity(4);
  }
}

// Iterative radix-2 forward FFT; n is a power of two by construction.
void fft_inplace(std::vector<Complex>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = -kTwoPi / static_cast<double>(len);
    const Complex wl{std::cos(ang), std::sin(ang)};
    for (std::size_t i = 0; i < n; i += len) {
      Complex w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const Complex u = a[i + k];
        const Complex v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
}

std::string fmt9(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.9g", v);
  return buf;
}

const char* axis_token(PulseAxis a) {
  switch (a) {
    case PulseAxis::X: return "x";
    case PulseAxis::MinusX: return "-x";
    case PulseAxis::Y: return "y";
    default: return "-y";
  }
}

PulseAxis axis_from_token(const std::string& tok) {
  if (tok == "x") return PulseAxis::X;
  if (tok == "-x") return PulseAxis::MinusX;
  if (tok == "y") return PulseAxis::Y;
  if (tok == "-y") return PulseAxis::MinusY;
  throw std::invalid_argument("parse_listing: bad axis token '" + tok + "'");
}

}  // namespace

void SpinSystem::validate() const {
  check_positive(omega_a, "omega_a");
  check_positive(omega_b, "omega_b");
  check_positive(j_coupling, "j_coupling");
  check_positive(t1_a, "t1_a");
  check_positive(t2_a, "t2_a");
  check_positive(t1_b, "t1_b");
  check_positive(t2_b, "t2_b");
  if (t2_a > 2.0 * t1_a || t2_b > 2.0 * t1_b) {
    throw std::invalid_argument("SpinSystem: t2 must not exceed 2*t1");
  }
}

PulseElement PulseElement::pulse(Qubit spin, double flip, PulseAxis axis) {
  if (!std::isfinite(flip) || flip < 0.0) {
    throw std::invalid_argument("PulseElement: flip must be finite and >= 0");
  }
  return PulseElement{Kind::HardPulse, spin, flip, axis, kHardPulseWidth};
}

PulseElement PulseElement::delay(double seconds) {
  if (!std::isfinite(seconds) || seconds < 0.0) {
    throw std::invalid_argument("PulseElement: delay must be finite and >= 0");
  }
  return PulseElement{Kind::Delay, Qubit::A, 0.0, PulseAxis::X, seconds};
}

PulseElement PulseElement::gradient() {
  return PulseElement{Kind::GradientCrush, Qubit::A, 0.0, PulseAxis::X, 0.0};
}

double PulseSequence::total_duration() const {
  double sum = 0.0;
  for (const PulseElement& e : elements) sum += e.duration;
  return sum;
}

ComplexMatrix coupling_propagator(const SpinSystem& sys, double t) {
  if (!(t >= 0.0) || !std::isfinite(t)) {
    throw std::invalid_argument("coupling_propagator: t must be >= 0");
  }
  ComplexMatrix u = ComplexMatrix::Zero(4, 4);
  for (int i = 0; i < 4; ++i) {
    // Iz eigenvalues +-1/2 per spin; product +-1/4 by parity.
    const double pa = bit_a(i) ? -0.5 : 0.5;
    const double pb = bit_b(i) ? -0.5 : 0.5;
    u(i, i) = std::exp(-kI * (kTwoPi * sys.j_coupling * t * pa * pb));
  }
  return u;
}

ComplexMatrix pulse_rotation(Qubit spin, double flip, PulseAxis axis) {
  const double phi = axis_angle(axis);
  const ComplexMatrix n_sigma =
      std::cos(phi) * pauli(PauliAxis::X) + std::sin(phi) * pauli(PauliAxis::Y);
  const ComplexMatrix r =
      std::cos(flip / 2.0) * identity(2) - kI * std::sin(flip / 2.0) * n_sigma;
  return spin == Qubit::A ? tensor(r, identity(2)) : tensor(identity(2), r);
}

ComplexMatrix frame_rotation(double za, double zb) {
  ComplexMatrix rza = ComplexMatrix::Zero(2, 2);
  rza(0, 0) = std::exp(-kI * (za / 2.0));
  rza(1, 1) = std::exp(kI * (za / 2.0));
  ComplexMatrix rzb = ComplexMatrix::Zero(2, 2);
  rzb(0, 0) = std::exp(-kI * (zb / 2.0));
  rzb(1, 1) = std::exp(kI * (zb / 2.0));
  return tensor(rza, rzb);
}

CompiledSequence compile(const GateList& gates, CloneAngle theta,
                         const SpinSystem& sys) {
  sys.validate();
  FrameState f;
  std::vector<PulseElement> out;
  for (const Gate& g : gates) {
    if (g.control == g.target) {
      throw std::invalid_argument("compile: control == target");
    }
    switch (g.kind) {
      case GateKind::Cnot:
        emit_cnot(out, f, g, sys);
        break;
      case GateKind::ControlledRy:
        emit_controlled_ry(out, f, g, sys);
        break;
    }
  }
  canonicalize_frame(f.za, f.gp);
  canonicalize_frame(f.zb, f.gp);
  f.gp = std::remainder(f.gp, kTwoPi);

  double theta_c = std::fmod(theta.radians(), kTwoPi);
  if (theta_c < 0.0) theta_c += kTwoPi;
  CompiledSequence cs;
  cs.sequence = PulseSequence{std::move(out)};
  cs.tau1 = sys.tau1();
  cs.tau2 = theta_c * cs.tau1 / kPi;
  cs.global_phase = f.gp;
  cs.zframe_a = f.za;
  cs.zframe_b = f.zb;
  return cs;
}

ComplexMatrix ideal_propagator(const PulseSequence& seq, const SpinSystem& sys,
                               bool couple_during_pulses) {
  sys.validate();
  ComplexMatrix p = identity(4);
  for (const PulseElement& e : seq.elements) {
    p = element_unitary(e, sys, couple_during_pulses) * p;
  }
  return p;
}

DensityMatrix simulate_relaxed(const DensityMatrix& rho_in,
                               const PulseSequence& seq,
                               const SpinSystem& sys) {
  sys.validate();
  if (rho_in.dim() != 4) {
    throw std::invalid_argument("simulate_relaxed: expected a 4x4 state");
  }
  ComplexMatrix m = rho_in.matrix();
  for (const PulseElement& e : seq.elements) {
    const ComplexMatrix u = element_unitary(e, sys, false);
    m = u * m * u.adjoint();
    apply_relaxation(m, sys, e.duration);
  }
  return DensityMatrix(std::move(m));
}

DensityMatrix apply_frame_correction(const CompiledSequence& cs,
                                     const DensityMatrix& rho) {
  return evolve(rho, frame_rotation(cs.zframe_a, cs.zframe_b));
}

RelaxedCloneResult relaxed_clone_fidelities(EquatorialPhase phi,
                                            CloneAngle theta,
                                            const SpinSystem& sys) {
  const CompiledSequence cs = compile(decompose(theta), theta, sys);
  const PureState input = PureState::equatorial(phi.radians());
  const DensityMatrix rho0 =
      DensityMatrix::from_pure(tensor(input, PureState::basis(2, 0)));
  const DensityMatrix rho_corrected =
      apply_frame_correction(cs, simulate_relaxed(rho0, cs.sequence, sys));
  return RelaxedCloneResult{
      fidelity(input, partial_trace(rho_corrected, Qubit::A)),
      fidelity(input, partial_trace(rho_corrected, Qubit::B)),
      cs.sequence.total_duration()};
}

void AcquisitionConfig::validate() const {
  if (n_samples < 2 || (n_samples & (n_samples - 1)) != 0) {
    throw std::invalid_argument(
        "AcquisitionConfig: n_samples must be a power of two >= 2");
  }
  if (!(dwell_time > 0.0) || !std::isfinite(dwell_time)) {
    throw std::invalid_argument("AcquisitionConfig: dwell_time must be > 0");
  }
  if (!std::isfinite(reference_phase)) {
    throw std::invalid_argument("AcquisitionConfig: non-finite phase");
  }
}

Spectrum synthesize_spectrum(const DensityMatrix& rho, Qubit spin,
                             const SpinSystem& sys,
                             const AcquisitionConfig& acq) {
  sys.validate();
  acq.validate();
  if (rho.dim() != 4) {
    throw std::invalid_argument("synthesize_spectrum: expected a 4x4 state");
  }
  const double df = 1.0 / (acq.n_samples * acq.dwell_time);
  if (sys.j_coupling < 2.0 * df) {
    throw std::invalid_argument(
        "synthesize_spectrum: acquisition cannot resolve the J splitting");
  }

  const ComplexMatrix raising =
      pauli(PauliAxis::X) + kI * pauli(PauliAxis::Y);
  const ComplexMatrix detect = spin == Qubit::A ? tensor(raising, identity(2))
                                                : tensor(identity(2), raising);
  const Complex receiver = std::exp(kI * acq.reference_phase);
  const ComplexMatrix step = coupling_propagator(sys, acq.dwell_time);

  std::vector<Complex> fid(static_cast<std::size_t>(acq.n_samples));
  ComplexMatrix m = rho.matrix();
  for (int k = 0; k < acq.n_samples; ++k) {
    fid[static_cast<std::size_t>(k)] = (m * detect).trace() * receiver;
    m = step * m * step.adjoint();
    apply_relaxation(m, sys, acq.dwell_time);
  }
  fft_inplace(fid);

  Spectrum out;
  out.frequencies.resize(fid.size());
  out.amplitudes.resize(fid.size());
  const int half = acq.n_samples / 2;
  double integral = 0.0;
  for (int i = 0; i < acq.n_samples; ++i) {
    const int src = (i + half) % acq.n_samples;  // fftshift
    out.frequencies[static_cast<std::size_t>(i)] = (i - half) * df;
    out.amplitudes[static_cast<std::size_t>(i)] =
        fid[static_cast<std::size_t>(src)];
    integral += fid[static_cast<std::size_t>(src)].real() * df;
  }
  out.multiplet_integral = integral;
  out.carrier_hz = spin == Qubit::A ? sys.omega_a : sys.omega_b;
  return out;
}

std::string write_listing(const PulseSequence& seq) {
  std::string out;
  for (const PulseElement& e : seq.elements) {
    switch (e.kind) {
      case PulseElement::Kind::HardPulse:
        out += "PULSE ";
        out += e.spin == Qubit::A ? 'a' : 'b';
        out += ' ';
        out += fmt9(e.flip * 180.0 / kPi);
        out += ' ';
        out += axis_token(e.axis);
        out += ' ';
        out += fmt9(e.duration);
        out += '\n';
        break;
      case PulseElement::Kind::Delay:
        out += "DELAY ";
        out += fmt9(e.duration);
        out += '\n';
        break;
      default:
        out += "GRAD\n";
        break;
    }
  }
  return out;
}

PulseSequence parse_listing(const std::string& text) {
  PulseSequence seq;
  std::istringstream in(text);
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string kind;
    ls >> kind;
    const auto fail = [&](const char* why) {
      throw std::invalid_argument("parse_listing: line " +
                                  std::to_string(line_no) + ": " + why);
    };
    if (kind == "PULSE") {
      std::string spin_tok, axis_tok;
      double flip_deg = 0.0, dur = 0.0;
      if (!(ls >> spin_tok >> flip_deg >> axis_tok >> dur)) fail("bad PULSE");
      if (spin_tok != "a" && spin_tok != "b") fail("bad spin");
      if (std::abs(dur - kHardPulseWidth) > 1e-12) fail("bad pulse width");
      seq.elements.push_back(
          PulseElement::pulse(spin_tok == "a" ? Qubit::A : Qubit::B,
                              flip_deg * kPi / 180.0,
                              axis_from_token(axis_tok)));
    } else if (kind == "DELAY") {
      double dur = 0.0;
      if (!(ls >> dur)) fail("bad DELAY");
      seq.elements.push_back(PulseElement::delay(dur));
    } else if (kind == "GRAD") {
      seq.elements.push_back(PulseElement::gradient());
    } else {
      fail("unknown element");
    }
  }
  return seq;
}

ComplexMatrix thermal_deviation_operator() {
  return tensor(pauli(PauliAxis::Z), identity(2)) +
         4.0 * tensor(identity(2), pauli(PauliAxis::Z));
}

}  // namespace qpccm::nmr
