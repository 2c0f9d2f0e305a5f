// SPDX-License-Identifier: Apache-2.0
//
// End-to-end checks of the command line tool: exit codes, file formats,
// byte-for-byte determinism of output files.

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct CmdResult {
  int exit_code;
  std::string output;  // combined stdout + stderr
};

fs::path work_dir() {
  static const fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / "qpccm_cli_test";
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

CmdResult run_cli(const std::string& args) {
  const fs::path log = work_dir() / "last_output.txt";
  const std::string cmd =
      std::string(QPCCM_CLI_BIN) + " " + args + " > " + log.string() + " 2>&1";
  const int raw = std::system(cmd.c_str());
  CmdResult result;
  result.exit_code = WIFEXITED(raw) ? WEXITSTATUS(raw) : -1;
  std::ifstream in(log);
  std::stringstream ss;
  ss << in.rdbuf();
  result.output = ss.str();
  return result;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int count_lines(const std::string& text) {
  int n = 0;
  for (const char c : text) n += c == '\n';
  return n;
}

}  // namespace

TEST_CASE("cli: clone prints the optimal fidelities") {
  const CmdResult r = run_cli("clone --phi 0 --theta 0.78539816339744831");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("f_a: 0.853553391") != std::string::npos);
  CHECK(r.output.find("f_b: 0.853553391") != std::string::npos);
}

TEST_CASE("cli: clone passthrough at theta = 0") {
  const CmdResult r = run_cli("clone --theta 0");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("f_a: 1") != std::string::npos);
}

TEST_CASE("cli: theta in degrees matches radians") {
  const CmdResult deg = run_cli("clone --theta-deg 45");
  CHECK(deg.exit_code == 0);
  CHECK(deg.output.find("f_a: 0.853553391") != std::string::npos);
}

TEST_CASE("cli: usage errors exit with code 2") {
  CHECK(run_cli("clone --theta notanumber").exit_code == 2);
  CHECK(run_cli("clone --format xml").exit_code == 2);
  CHECK(run_cli("clone --theta 1 --theta-deg 10").exit_code == 2);
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("").exit_code == 2);
  CHECK(run_cli("eavesdrop --grid-points 1").exit_code == 2);
}

TEST_CASE("cli: invalid flags never produce output files") {
  const fs::path out = work_dir() / "must_not_exist.csv";
  const CmdResult r =
      run_cli("eavesdrop --grid-points 1 --out " + out.string());
  CHECK(r.exit_code == 2);
  CHECK(!fs::exists(out));
}

TEST_CASE("cli: eavesdrop output is byte-identical across runs") {
  const fs::path f1 = work_dir() / "curves1.csv";
  const fs::path f2 = work_dir() / "curves2.csv";
  CHECK(run_cli("eavesdrop --out " + f1.string()).exit_code == 0);
  CHECK(run_cli("eavesdrop --out " + f2.string()).exit_code == 0);
  const std::string c1 = slurp(f1);
  CHECK(c1 == slurp(f2));
  CHECK(count_lines(c1) == 97);  // header + 24*4 rows
  CHECK(c1.rfind("theta,state,basis,s_bob,s_eve,qber,i_ab,i_ae\n", 0) == 0);
  CHECK(c1.find("\r") == std::string::npos);  // LF only
}

TEST_CASE("cli: sweep-phases emits 24 rows plus the mean footer") {
  const fs::path out = work_dir() / "sweep.csv";
  CHECK(run_cli("sweep-phases --out " + out.string()).exit_code == 0);
  const std::string csv = slurp(out);
  CHECK(count_lines(csv) == 26);  // header + 24 + mean
  CHECK(csv.rfind("phi,f_a,f_b\n", 0) == 0);
  CHECK(csv.find("mean,8.53553391e-01,8.53553391e-01\n") != std::string::npos);
}

TEST_CASE("cli: bb84 report is deterministic and well formed") {
  const fs::path f1 = work_dir() / "report1.json";
  const fs::path f2 = work_dir() / "report2.json";
  const std::string flags = "bb84 --n-pulses 2000 --theta 0.785398 --seed 42";
  CHECK(run_cli(flags + " --out " + f1.string()).exit_code == 0);
  CHECK(run_cli(flags + " --out " + f2.string()).exit_code == 0);
  CHECK(slurp(f1) == slurp(f2));

  const nlohmann::json j = nlohmann::json::parse(slurp(f1));
  CHECK(j["n_pulses"] == 2000);
  CHECK(j["seed"] == 42);
  CHECK(j["n_sifted"].get<long long>() <= 2000);
  CHECK(j["per_basis"]["x"].contains("sifted"));
  CHECK(j["per_basis"]["y"].contains("eve_errors"));
  const double qber = j["qber_bob"].get<double>();
  CHECK(qber > 0.05);
  CHECK(qber < 0.25);
}

TEST_CASE("cli: bb84 with no attack reports zero error") {
  const fs::path out = work_dir() / "noattack.json";
  CHECK(run_cli("bb84 --n-pulses 500 --theta 0 --out " + out.string())
            .exit_code == 0);
  const nlohmann::json j = nlohmann::json::parse(slurp(out));
  CHECK(j["qber_bob"].get<double>() == 0.0);
  CHECK(j["i_ab"].get<double>() == 1.0);
}

TEST_CASE("cli: compile writes a listing and a verification report") {
  const fs::path out = work_dir() / "sequence.txt";
  const CmdResult r =
      run_cli("compile --theta 0.78539816339744831 --format json --out " +
              out.string());
  CHECK(r.exit_code == 0);

  const nlohmann::json j = nlohmann::json::parse(r.output);
  CHECK(j["propagator_distance"].get<double>() < 1e-9);
  const double duration = j["total_duration_s"].get<double>();
  CHECK(duration > 4.5e-3);
  CHECK(duration < 6.0e-3);
  CHECK(j["tau1_s"].get<double>() == doctest::Approx(1.1655011655e-3));

  const std::string listing = slurp(out);
  CHECK(listing.find("PULSE b 90 ") != std::string::npos);
  CHECK(listing.find("DELAY 0.00116550117\n") != std::string::npos);
  CHECK(listing.find("DELAY 0.000291375291\n") != std::string::npos);

  // Round trip through the same flags is byte-identical.
  const fs::path out2 = work_dir() / "sequence2.txt";
  run_cli("compile --theta 0.78539816339744831 --format json --out " +
          out2.string());
  CHECK(listing == slurp(out2));
}

TEST_CASE("cli: spectrum emits the acquisition rows and the ratio") {
  const fs::path out = work_dir() / "spectrum.csv";
  const CmdResult r = run_cli(
      "spectrum --phi 0 --theta 0.78539816339744831 --spin a --out " +
      out.string());
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("r_prime: 0.707106781") != std::string::npos);
  CHECK(r.output.find("fidelity_estimate: 0.853553391") != std::string::npos);
  const std::string csv = slurp(out);
  CHECK(count_lines(csv) == 4097);  // header + n_samples
  CHECK(csv.rfind("freq_hz,re_in,im_in,re_out,im_out\n", 0) == 0);
}
