#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "qpred/states.hpp"

namespace fs = std::filesystem;

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout only
};

std::string slurp(const fs::path& path) {
  std::ifstream in(path, std::ios::binary);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

RunResult run(const std::string& args) {
  static int counter = 0;
  const fs::path out = fs::temp_directory_path() / ("qpred_cli_" + std::to_string(counter++));
  const std::string cmd = std::string(QPRED_BIN) + " " + args + " > " + out.string() + " 2>/dev/null";
  const int status = std::system(cmd.c_str());
  RunResult res;
  res.exit_code = WEXITSTATUS(status);
  res.output = slurp(out);
  fs::remove(out);
  return res;
}

std::string fixture(const std::string& name) {
  return (fs::path(QPRED_FIXTURES) / name).string();
}

}  // namespace

TEST_CASE("simulate with defaults reproduces the golden CSV byte for byte") {
  const RunResult res = run("simulate --steps 10 --p 0.7");
  CHECK(res.exit_code == 0);
  CHECK(res.output == slurp(fs::path(QPRED_GOLDEN) / "protocol_default.csv"));
  // identical flags, identical bytes
  CHECK(run("simulate --steps 10 --p 0.7").output == res.output);
}

TEST_CASE("simulate rejects out-of-range and unknown flags with exit 2") {
  CHECK(run("simulate --p 1.5").exit_code == 2);
  CHECK(run("simulate --definitely-not-a-flag 1").exit_code == 2);
  CHECK(run("nonsense-subcommand").exit_code == 2);
}

TEST_CASE("a single-step simulation emits one row with zero lost work") {
  const RunResult res = run("simulate --steps 1");
  CHECK(res.exit_code == 0);
  std::istringstream lines(res.output);
  std::string header, row, extra;
  REQUIRE(std::getline(lines, header));
  REQUIRE(std::getline(lines, row));
  CHECK_FALSE(std::getline(lines, extra));
  std::size_t pos = 0;
  for (int c = 0; c < 10; ++c) pos = row.find(',', pos) + 1;
  CHECK(std::abs(std::stod(row.substr(pos, row.find(',', pos) - pos))) < 1e-10);
}

TEST_CASE("analyze reports the Bell anchors") {
  const RunResult res = run("analyze " + fixture("bell.json"));
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("I(S:X) = 2 bits") != std::string::npos);
  CHECK(res.output.find("H(S|X) = -1 bits") != std::string::npos);
  CHECK(res.output.find("delta(S|X) = 1 bits") != std::string::npos);
}

TEST_CASE("analyze reports vanishing correlations for the product fixture") {
  const RunResult res = run("analyze " + fixture("product.json"));
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("I(S:X) = 0 bits") != std::string::npos);
  CHECK(res.output.find("delta(S|X) = 0 bits") != std::string::npos);
  CHECK(res.output.find("I^C(S|X)   = 0 bits") != std::string::npos);
}

TEST_CASE("analyze of the steady-state fixture finds the sigma_x minimizing basis") {
  const RunResult res = run("analyze " + fixture("steady_state.json"));
  CHECK(res.exit_code == 0);
  // theta = pi/2: the state is exactly classical-quantum in X's |+-> basis
  CHECK(res.output.find("argmin basis: theta = 1.5707963") != std::string::npos);
}

TEST_CASE("analyze with a channel file prints the full work ledger") {
  const RunResult res =
      run("analyze " + fixture("steady_state.json") + " --channel " + fixture("update_p07.json"));
  CHECK(res.exit_code == 0);
  CHECK(res.output.find("W_ext before") != std::string::npos);
  CHECK(res.output.find("W_lost =") != std::string::npos);
  CHECK(res.output.find("W_C") != std::string::npos);
  CHECK(res.output.find("W_Q") != std::string::npos);
}

TEST_CASE("analyze propagates file errors as exit 2") {
  CHECK(run("analyze /nonexistent/state.json").exit_code == 2);
}

TEST_CASE("steady-state output is deterministic and round-trips") {
  const RunResult a = run("steady-state");
  const RunResult b = run("steady-state");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);

  const fs::path tmp = fs::temp_directory_path() / "qpred_ss_roundtrip.json";
  {
    std::ofstream out(tmp, std::ios::binary);
    out << a.output;
  }
  CHECK(run("validate " + tmp.string()).exit_code == 0);
  CHECK(run("analyze " + tmp.string()).exit_code == 0);
  fs::remove(tmp);
}

TEST_CASE("steady-state is independent of kappa and honors the ordering flag") {
  const RunResult k1 = run("steady-state --kappa 1");
  const RunResult k2 = run("steady-state --kappa 2");
  std::istringstream s1(k1.output), s2(k2.output);
  const qpred::DensityMatrix a = qpred::read_state(s1);
  const qpred::DensityMatrix b = qpred::read_state(s2);
  CHECK(qpred::max_abs_diff(a.matrix(), b.matrix()) < 1e-9);

  std::istringstream sx(run("steady-state --ordering XS").output);
  const qpred::DensityMatrix flipped = qpred::read_state(sx);
  CHECK(flipped.ordering() == qpred::Ordering::XS);
  CHECK(qpred::max_abs_diff(flipped.swapped().matrix(), a.matrix()) < 1e-12);
}

TEST_CASE("every fixture shipped in the repo passes validate") {
  int checked = 0;
  for (const auto& entry : fs::directory_iterator(QPRED_FIXTURES)) {
    if (entry.path().extension() != ".json") continue;
    CHECK(run("validate " + entry.path().string()).exit_code == 0);
    ++checked;
  }
  CHECK(checked >= 4);
}

TEST_CASE("validate distinguishes bad input from invalid states") {
  const fs::path garbage = fs::temp_directory_path() / "qpred_garbage.json";
  {
    std::ofstream out(garbage);
    out << "{ not json";
  }
  CHECK(run("validate " + garbage.string()).exit_code == 2);
  fs::remove(garbage);

  const fs::path badstate = fs::temp_directory_path() / "qpred_badstate.json";
  {
    std::ofstream out(badstate);
    out << R"({"dims": [2, 2], "ordering": "SX", "matrix": [
      [0.6,0],[0,0],[0,0],[0,0],
      [0,0],[0.6,0],[0,0],[0,0],
      [0,0],[0,0],[-0.1,0],[0,0],
      [0,0],[0,0],[0,0],[-0.1,0]]})";
  }
  const RunResult res = run("validate " + badstate.string());
  CHECK(res.exit_code == 3);
  CHECK(res.output.find("positivity") != std::string::npos);
  fs::remove(badstate);

  CHECK(run("validate /nonexistent/file.json").exit_code == 2);
}

TEST_CASE("simulate --kdt sets the per-step kappa*dt product") {
  const RunResult res = run("simulate --steps 3 --kdt 0.5 --kappa 2");
  CHECK(res.exit_code == 0);
  std::istringstream lines(res.output);
  std::string line;
  std::getline(lines, line);  // header
  std::vector<double> kt;
  while (std::getline(lines, line)) {
    const auto first = line.find(',');
    kt.push_back(std::stod(line.substr(first + 1, line.find(',', first + 1) - first - 1)));
  }
  REQUIRE(kt.size() == 3);
  CHECK(kt[1] == doctest::Approx(0.5));
  CHECK(kt[2] == doctest::Approx(1.0));
}

TEST_CASE("--out writes files instead of stdout") {
  const fs::path target = fs::temp_directory_path() / "qpred_out_test.csv";
  const RunResult res = run("simulate --steps 2 --out " + target.string());
  CHECK(res.exit_code == 0);
  CHECK(res.output.empty());
  CHECK(slurp(target).rfind("step,kt,", 0) == 0);
  fs::remove(target);
}

TEST_CASE("analyze --ordering re-tags the input state") {
  // the steady state has X marginal I/2 and a biased S marginal; flipping the
  // tag swaps the reported marginal entropies
  const RunResult sx = run("analyze " + fixture("steady_state.json"));
  const RunResult xs = run("analyze " + fixture("steady_state.json") + " --ordering XS");
  CHECK(xs.exit_code == 0);
  CHECK(sx.output.find("H(X)   = 1 bits") != std::string::npos);
  CHECK(xs.output.find("H(S)   = 1 bits") != std::string::npos);
}
