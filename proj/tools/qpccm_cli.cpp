// SPDX-License-Identifier: Apache-2.0
//
// qpccm command line tool: cloning runs, phase sweeps, eavesdropping curves,
// Monte Carlo protocol runs, pulse compilation and synthetic spectra.
//
// Exit codes: 0 success, 2 flag parse/validation failure, 1 internal error.
// Output files are written whole after all computation succeeds; identical
// flags produce byte-identical files (CSV numbers use 9-significant-digit
// scientific notation, LF line endings, one header row).

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <numbers>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "qpccm/bb84.hpp"
#include "qpccm/cloner.hpp"
#include "qpccm/nmr.hpp"
#include "qpccm/qcore.hpp"
#include "qpccm/rng.hpp"

using namespace qpccm;
using ordered_json = nlohmann::ordered_json;

namespace {

constexpr double kPi = std::numbers::pi;

std::string sci9(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.8e", v);
  return buf;
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw std::runtime_error("cannot open output file: " + path);
  f << content;
  if (!f) throw std::runtime_error("failed writing output file: " + path);
}

// Emit to the file when a path was given, otherwise to stdout.
void deliver(const std::string& out_path, const std::string& content,
             const std::string& summary) {
  if (out_path.empty()) {
    std::cout << content;
  } else {
    write_file(out_path, content);
    if (!summary.empty()) std::cout << summary << "\n";
  }
}

ordered_json matrix_json(const ComplexMatrix& m) {
  ordered_json re = ordered_json::array();
  ordered_json im = ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    ordered_json re_row = ordered_json::array();
    ordered_json im_row = ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      re_row.push_back(m(r, c).real());
      im_row.push_back(m(r, c).imag());
    }
    re.push_back(re_row);
    im.push_back(im_row);
  }
  return ordered_json{{"re", re}, {"im", im}};
}

void append_matrix_csv(std::string& csv, const std::string& name,
                       const ComplexMatrix& m) {
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      csv += name + "_" + std::to_string(r) + std::to_string(c) + "_re," +
             sci9(m(r, c).real()) + "\n";
      csv += name + "_" + std::to_string(r) + std::to_string(c) + "_im," +
             sci9(m(r, c).imag()) + "\n";
    }
  }
}

struct AngleFlags {
  double theta = kPi / 4.0;
  double theta_deg = 0.0;
  bool deg_given = false;

  double radians() const { return deg_given ? theta_deg * kPi / 180.0 : theta; }
};

// Adds --theta / --theta-deg (mutually exclusive) to a subcommand.
void add_theta_flags(CLI::App* cmd, AngleFlags& flags) {
  auto* rad = cmd->add_option("--theta", flags.theta,
                              "Rotation angle theta in radians");
  auto* deg = cmd->add_option_function<double>(
      "--theta-deg",
      [&flags](const double& v) {
        flags.theta_deg = v;
        flags.deg_given = true;
      },
      "Rotation angle theta in degrees (converted, stored nowhere)");
  rad->excludes(deg);
  deg->excludes(rad);
}

int cmd_clone(double phi_in, const AngleFlags& angle, bool relaxed,
              const std::string& out, const std::string& format) {
  const EquatorialPhase phi(phi_in);
  const CloneAngle theta(angle.radians());
  const CloneResult r = clone(phi, theta);
  const BlochVector ba = bloch(r.rho_a);
  const BlochVector bb = bloch(r.rho_b);
  std::optional<nmr::RelaxedCloneResult> rr;
  if (relaxed) {
    rr = nmr::relaxed_clone_fidelities(phi, theta, nmr::SpinSystem{});
  }

  std::printf("theta: %.9g\nphi: %.9g\nf_a: %.9g\nf_b: %.9g\n",
              theta.radians(), phi.radians(), r.f_a, r.f_b);
  std::printf("bloch_a: (%.9g, %.9g, %.9g)\n", ba.x, ba.y, ba.z);
  std::printf("bloch_b: (%.9g, %.9g, %.9g)\n", bb.x, bb.y, bb.z);
  if (rr) {
    std::printf("f_a_relaxed: %.9g\nf_b_relaxed: %.9g\nduration_s: %.9g\n",
                rr->f_a, rr->f_b, rr->duration);
  }

  if (out.empty()) return 0;
  if (format == "json") {
    ordered_json j{{"theta", theta.radians()},
                   {"phi", phi.radians()},
                   {"f_a", r.f_a},
                   {"f_b", r.f_b},
                   {"bloch_a", {{"x", ba.x}, {"y", ba.y}, {"z", ba.z}}},
                   {"bloch_b", {{"x", bb.x}, {"y", bb.y}, {"z", bb.z}}},
                   {"rho_a", matrix_json(r.rho_a.matrix())},
                   {"rho_b", matrix_json(r.rho_b.matrix())}};
    if (rr) {
      j["f_a_relaxed"] = rr->f_a;
      j["f_b_relaxed"] = rr->f_b;
      j["duration_s"] = rr->duration;
    }
    write_file(out, j.dump(2) + "\n");
  } else {
    std::string csv = "key,value\n";
    csv += "theta," + sci9(theta.radians()) + "\n";
    csv += "phi," + sci9(phi.radians()) + "\n";
    csv += "f_a," + sci9(r.f_a) + "\n";
    csv += "f_b," + sci9(r.f_b) + "\n";
    csv += "bloch_a_x," + sci9(ba.x) + "\n";
    csv += "bloch_a_y," + sci9(ba.y) + "\n";
    csv += "bloch_a_z," + sci9(ba.z) + "\n";
    csv += "bloch_b_x," + sci9(bb.x) + "\n";
    csv += "bloch_b_y," + sci9(bb.y) + "\n";
    csv += "bloch_b_z," + sci9(bb.z) + "\n";
    append_matrix_csv(csv, "rho_a", r.rho_a.matrix());
    append_matrix_csv(csv, "rho_b", r.rho_b.matrix());
    if (rr) {
      csv += "f_a_relaxed," + sci9(rr->f_a) + "\n";
      csv += "f_b_relaxed," + sci9(rr->f_b) + "\n";
      csv += "duration_s," + sci9(rr->duration) + "\n";
    }
    write_file(out, csv);
  }
  return 0;
}

int cmd_sweep_phases(const AngleFlags& angle, bool relaxed,
                     const std::string& out, const std::string& format) {
  const CloneAngle theta(angle.radians());
  const nmr::SpinSystem sys;
  std::vector<std::array<double, 3>> rows;
  double sum_a = 0.0, sum_b = 0.0;
  for (int n = 0; n < 24; ++n) {
    const double phi = n * kPi / 12.0;
    double fa, fb;
    if (relaxed) {
      const nmr::RelaxedCloneResult r =
          nmr::relaxed_clone_fidelities(EquatorialPhase(phi), theta, sys);
      fa = r.f_a;
      fb = r.f_b;
    } else {
      const CloneResult r = clone(EquatorialPhase(phi), theta);
      fa = r.f_a;
      fb = r.f_b;
    }
    rows.push_back({phi, fa, fb});
    sum_a += fa;
    sum_b += fb;
  }
  const double mean_a = sum_a / 24.0;
  const double mean_b = sum_b / 24.0;

  std::string content;
  if (format == "json") {
    ordered_json j{{"theta", theta.radians()}, {"relaxed", relaxed}};
    ordered_json jrows = ordered_json::array();
    for (const auto& row : rows) {
      jrows.push_back(
          {{"phi", row[0]}, {"f_a", row[1]}, {"f_b", row[2]}});
    }
    j["rows"] = jrows;
    j["mean_f_a"] = mean_a;
    j["mean_f_b"] = mean_b;
    content = j.dump(2) + "\n";
  } else {
    content = "phi,f_a,f_b\n";
    for (const auto& row : rows) {
      content += sci9(row[0]) + "," + sci9(row[1]) + "," + sci9(row[2]) + "\n";
    }
    content += "mean," + sci9(mean_a) + "," + sci9(mean_b) + "\n";
  }
  deliver(out, content,
          "wrote 24 phase rows; mean f_a = " + sci9(mean_a) +
              ", mean f_b = " + sci9(mean_b));
  return 0;
}

int cmd_eavesdrop(int grid_points, const std::string& out,
                  const std::string& format) {
  std::vector<double> grid(static_cast<std::size_t>(grid_points));
  for (int k = 0; k < grid_points; ++k) {
    grid[static_cast<std::size_t>(k)] = k * 2.0 * kPi / grid_points;
  }
  const bb84::CurveTable table = bb84::curves(grid);

  const auto state_label = [](const bb84::CurveRow& row) {
    std::string label = row.bit == 0 ? "+" : "-";
    label += row.basis == bb84::Basis::X ? "x" : "y";
    return label;
  };
  const auto basis_label = [](const bb84::CurveRow& row) {
    return row.basis == bb84::Basis::X ? "x" : "y";
  };

  std::string content;
  if (format == "json") {
    ordered_json jrows = ordered_json::array();
    for (const bb84::CurveRow& row : table) {
      jrows.push_back({{"theta", row.theta},
                       {"state", state_label(row)},
                       {"basis", basis_label(row)},
                       {"s_bob", row.s_bob},
                       {"s_eve", row.s_eve},
                       {"qber", row.qber},
                       {"i_ab", row.i_ab},
                       {"i_ae", row.i_ae}});
    }
    content = ordered_json{{"rows", jrows}}.dump(2) + "\n";
  } else {
    content = "theta,state,basis,s_bob,s_eve,qber,i_ab,i_ae\n";
    for (const bb84::CurveRow& row : table) {
      content += sci9(row.theta) + "," + state_label(row) + "," +
                 basis_label(row) + "," + sci9(row.s_bob) + "," +
                 sci9(row.s_eve) + "," + sci9(row.qber) + "," +
                 sci9(row.i_ab) + "," + sci9(row.i_ae) + "\n";
    }
  }
  deliver(out, content,
          "wrote " + std::to_string(table.size()) + " curve rows");
  return 0;
}

ordered_json report_to_json(const bb84::ProtocolReport& r) {
  const auto basis_json = [](const bb84::BasisCounts& c) {
    return ordered_json{{"sifted", c.sifted},
                        {"bob_errors", c.bob_errors},
                        {"eve_errors", c.eve_errors}};
  };
  return ordered_json{{"n_pulses", r.n_pulses},
                      {"n_sifted", r.n_sifted},
                      {"qber_bob", r.qber_bob},
                      {"eve_error", r.eve_error},
                      {"i_ab", r.i_ab},
                      {"i_ae", r.i_ae},
                      {"seed", r.seed},
                      {"per_basis",
                       {{"x", basis_json(r.basis_x)},
                        {"y", basis_json(r.basis_y)}}}};
}

int cmd_bb84(std::int64_t n_pulses, const AngleFlags& angle,
             std::uint64_t seed, const std::string& out) {
  const bb84::ProtocolReport report =
      bb84::run_protocol(n_pulses, bb84::AttackConfig{angle.radians()}, seed);
  const std::string content = report_to_json(report).dump(2) + "\n";
  deliver(out, content,
          "n_sifted = " + std::to_string(report.n_sifted) +
              ", qber_bob = " + sci9(report.qber_bob));
  return 0;
}

int cmd_compile(const AngleFlags& angle, const std::string& out,
                const std::string& format) {
  const CloneAngle theta(angle.radians());
  const nmr::SpinSystem sys;
  const nmr::CompiledSequence cs = nmr::compile(decompose(theta), theta, sys);
  const ComplexMatrix propagator = nmr::ideal_propagator(cs.sequence, sys);
  const double distance = phase_aligned_distance(
      build_unitary(theta),
      nmr::frame_rotation(cs.zframe_a, cs.zframe_b) * propagator);
  const std::string listing = nmr::write_listing(cs.sequence);

  if (format == "json") {
    ordered_json j{{"theta", theta.radians()},
                   {"tau1_s", cs.tau1},
                   {"tau2_s", cs.tau2},
                   {"n_elements", cs.sequence.elements.size()},
                   {"total_duration_s", cs.sequence.total_duration()},
                   {"propagator_distance", distance},
                   {"global_phase_rad", cs.global_phase},
                   {"zframe_a_rad", cs.zframe_a},
                   {"zframe_b_rad", cs.zframe_b}};
    std::cout << j.dump(2) << "\n";
  } else {
    std::printf("theta_rad: %.9g\n", theta.radians());
    std::printf("tau1_s: %.9g\n", cs.tau1);
    std::printf("tau2_s: %.9g\n", cs.tau2);
    std::printf("n_elements: %zu\n", cs.sequence.elements.size());
    std::printf("total_duration_s: %.9g\n", cs.sequence.total_duration());
    std::printf("propagator_distance: %.9g\n", distance);
    std::printf("global_phase_rad: %.9g\n", cs.global_phase);
    std::printf("zframe_a_rad: %.9g\n", cs.zframe_a);
    std::printf("zframe_b_rad: %.9g\n", cs.zframe_b);
  }
  if (out.empty()) {
    std::cout << listing;
  } else {
    write_file(out, listing);
  }
  return 0;
}

int cmd_spectrum(double phi_in, const AngleFlags& angle, bool relaxed,
                 const std::string& spin_name, int n_samples, double dwell,
                 const std::string& out, const std::string& format) {
  const EquatorialPhase phi(phi_in);
  const CloneAngle theta(angle.radians());
  const Qubit spin = spin_name == "a" ? Qubit::A : Qubit::B;
  const nmr::SpinSystem sys;

  nmr::AcquisitionConfig acq;
  acq.n_samples = n_samples;
  acq.dwell_time = dwell;
  acq.reference_phase = -phi.radians();  // receiver locked to the input phase
  acq.validate();

  const PureState input = PureState::equatorial(phi.radians());
  const DensityMatrix rho_in =
      DensityMatrix::from_pure(tensor(input, PureState::basis(2, 0)));
  DensityMatrix rho_out = clone(phi, theta).rho_ab;
  if (relaxed) {
    const nmr::CompiledSequence cs = nmr::compile(decompose(theta), theta, sys);
    rho_out = nmr::apply_frame_correction(
        cs, nmr::simulate_relaxed(rho_in, cs.sequence, sys));
  }

  const nmr::Spectrum in_spec = nmr::synthesize_spectrum(rho_in, spin, sys, acq);
  const nmr::Spectrum out_spec =
      nmr::synthesize_spectrum(rho_out, spin, sys, acq);
  const double r_prime =
      std::abs(in_spec.multiplet_integral) > 0
          ? out_spec.multiplet_integral / in_spec.multiplet_integral
          : 0.0;

  std::printf("spin: %s\ncarrier_hz: %.9g\n", spin_name.c_str(),
              in_spec.carrier_hz);
  std::printf("integral_in: %.9g\nintegral_out: %.9g\n",
              in_spec.multiplet_integral, out_spec.multiplet_integral);
  std::printf("r_prime: %.9g\nfidelity_estimate: %.9g\n", r_prime,
              0.5 * (1.0 + r_prime));

  std::string content;
  if (format == "json") {
    ordered_json freq = ordered_json::array();
    ordered_json in_re = ordered_json::array(), in_im = ordered_json::array();
    ordered_json out_re = ordered_json::array(), out_im = ordered_json::array();
    for (std::size_t i = 0; i < in_spec.frequencies.size(); ++i) {
      freq.push_back(in_spec.frequencies[i]);
      in_re.push_back(in_spec.amplitudes[i].real());
      in_im.push_back(in_spec.amplitudes[i].imag());
      out_re.push_back(out_spec.amplitudes[i].real());
      out_im.push_back(out_spec.amplitudes[i].imag());
    }
    ordered_json j{{"spin", spin_name},
                   {"carrier_hz", in_spec.carrier_hz},
                   {"integral_in", in_spec.multiplet_integral},
                   {"integral_out", out_spec.multiplet_integral},
                   {"r_prime", r_prime},
                   {"fidelity_estimate", 0.5 * (1.0 + r_prime)},
                   {"freq_hz", freq},
                   {"in", {{"re", in_re}, {"im", in_im}}},
                   {"out", {{"re", out_re}, {"im", out_im}}}};
    content = j.dump(2) + "\n";
  } else {
    content = "freq_hz,re_in,im_in,re_out,im_out\n";
    for (std::size_t i = 0; i < in_spec.frequencies.size(); ++i) {
      content += sci9(in_spec.frequencies[i]) + "," +
                 sci9(in_spec.amplitudes[i].real()) + "," +
                 sci9(in_spec.amplitudes[i].imag()) + "," +
                 sci9(out_spec.amplitudes[i].real()) + "," +
                 sci9(out_spec.amplitudes[i].imag()) + "\n";
    }
  }
  if (!out.empty()) {
    write_file(out, content);
    std::cout << "wrote " << in_spec.frequencies.size() << " spectrum rows\n";
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qpccm: two-qubit phase-covariant cloning simulator with an NMR "
      "pulse-level model and a BB84 eavesdropping harness"};
  app.require_subcommand(1);

  std::string out;
  std::string format = "csv";
  double phi = 0.0;
  bool relaxed = false;

  // clone
  auto* clone_cmd =
      app.add_subcommand("clone", "Clone one equatorial state and report "
                                  "fidelities, Bloch vectors and reduced "
                                  "density matrices");
  AngleFlags clone_angle;
  clone_cmd->add_option("--phi", phi, "Input phase in radians")
      ->capture_default_str();
  add_theta_flags(clone_cmd, clone_angle);
  clone_cmd->add_flag("--relaxed", relaxed,
                      "Also simulate the compiled pulse sequence with "
                      "T1/T2 relaxation");
  clone_cmd->add_option("--out", out, "Output file path");
  clone_cmd->add_option("--format", format, "Output format (key,value CSV or JSON)")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // sweep-phases
  auto* sweep_cmd = app.add_subcommand(
      "sweep-phases",
      "Clone all 24 equatorial phases (spacing pi/12) at one theta; CSV "
      "columns phi,f_a,f_b plus a trailing mean row");
  AngleFlags sweep_angle;
  add_theta_flags(sweep_cmd, sweep_angle);
  sweep_cmd->add_flag("--relaxed", relaxed,
                      "Report relaxed fidelities from the pulse-level model");
  sweep_cmd->add_option("--out", out, "Output file path");
  sweep_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // eavesdrop
  auto* eaves_cmd = app.add_subcommand(
      "eavesdrop",
      "Analytic attack curves over a theta grid; CSV columns "
      "theta,state,basis,s_bob,s_eve,qber,i_ab,i_ae, one row per state");
  int grid_points = 24;
  eaves_cmd
      ->add_option("--grid-points", grid_points,
                   "Number of theta points spanning [0, 2*pi)")
      ->check(CLI::Range(2, 1000000))
      ->capture_default_str();
  eaves_cmd->add_option("--out", out, "Output file path");
  eaves_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // bb84
  auto* bb84_cmd = app.add_subcommand(
      "bb84",
      "Seeded Monte Carlo protocol run (RNG: splitmix64-substream-v1, one "
      "substream per pulse); emits the JSON report");
  std::int64_t n_pulses = 10000;
  std::uint64_t seed = 42;
  AngleFlags bb84_angle;
  bb84_cmd->add_option("--n-pulses", n_pulses, "Number of protocol pulses")
      ->check(CLI::Range(std::int64_t{1}, std::int64_t{1} << 40))
      ->capture_default_str();
  add_theta_flags(bb84_cmd, bb84_angle);
  bb84_cmd->add_option("--seed", seed, "RNG seed")->capture_default_str();
  bb84_cmd->add_option("--out", out, "Output file path (JSON)");

  // compile
  auto* compile_cmd = app.add_subcommand(
      "compile",
      "Compile the cloning circuit to a pulse/delay listing; prints a "
      "verification report (duration, propagator distance, declared "
      "z-frames)");
  AngleFlags compile_angle;
  add_theta_flags(compile_cmd, compile_angle);
  compile_cmd->add_option("--out", out, "Listing file path");
  compile_cmd->add_option("--format", format, "Report format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  // spectrum
  auto* spectrum_cmd = app.add_subcommand(
      "spectrum",
      "Synthesize input-reference and clone-output spectra for one spin; "
      "CSV columns freq_hz,re_in,im_in,re_out,im_out");
  AngleFlags spectrum_angle;
  std::string spin_name = "a";
  int n_samples = 4096;
  double dwell = 2e-4;
  spectrum_cmd->add_option("--phi", phi, "Input phase in radians")
      ->capture_default_str();
  add_theta_flags(spectrum_cmd, spectrum_angle);
  spectrum_cmd->add_flag("--relaxed", relaxed,
                         "Use the relaxed pulse-level clone output");
  spectrum_cmd->add_option("--spin", spin_name, "Observed spin")
      ->check(CLI::IsMember({"a", "b"}))
      ->capture_default_str();
  spectrum_cmd->add_option("--n-samples", n_samples,
                           "Acquisition points (power of two)")
      ->check(CLI::Range(2, 1 << 22))
      ->capture_default_str();
  spectrum_cmd->add_option("--dwell", dwell, "Dwell time in seconds")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  spectrum_cmd->add_option("--out", out, "Output file path");
  spectrum_cmd->add_option("--format", format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }

  try {
    if (app.got_subcommand(clone_cmd)) {
      return cmd_clone(phi, clone_angle, relaxed, out, format);
    }
    if (app.got_subcommand(sweep_cmd)) {
      return cmd_sweep_phases(sweep_angle, relaxed, out, format);
    }
    if (app.got_subcommand(eaves_cmd)) {
      return cmd_eavesdrop(grid_points, out, format);
    }
    if (app.got_subcommand(bb84_cmd)) {
      return cmd_bb84(n_pulses, bb84_angle, seed, out);
    }
    if (app.got_subcommand(compile_cmd)) {
      return cmd_compile(compile_angle, out, format);
    }
    if (app.got_subcommand(spectrum_cmd)) {
      return cmd_spectrum(phi, spectrum_angle, relaxed, spin_name, n_samples,
                          dwell, out, format);
    }
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
