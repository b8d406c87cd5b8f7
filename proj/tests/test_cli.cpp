// End-to-end tests of the command-line tool: happy paths, error taxonomy and
// exit codes, artifact files, and spec-file round trips.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <string>

namespace {

struct RunResult {
  int exit_code = -1;
  std::string output;  // stdout + stderr
};

RunResult run_cli(const std::string& args) {
  const std::string cmd = std::string(GAGLIARDO_CLI_PATH) + " " + args + " 2>&1";
  RunResult r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (size_t n = fread(buf, 1, sizeof(buf), pipe)) r.output.append(buf, n);
  const int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("energy happy path emits JSON and exit 0") {
  const auto r = run_cli("energy --equispaced --T 2 --s 0.3 --p 2");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"value\"") != std::string::npos);
  CHECK(r.output.find("\"tail_lower\"") != std::string::npos);
}

TEST_CASE("critical parameters yield the divergence error and exit 3") {
  const auto r = run_cli("energy --equispaced --T 2 --s 0.5 --p 2");
  CHECK(r.exit_code == 3);
  CHECK(r.output.find("DivergentEnergy") != std::string::npos);
}

TEST_CASE("unknown command and bad flags exit 2") {
  CHECK(run_cli("frobnicate").exit_code == 2);
  CHECK(run_cli("energy --equispaced --random --T 2").exit_code == 2);
  CHECK(run_cli("energy --format yaml").exit_code == 2);
}

TEST_CASE("optimize writes a trace artifact and reports the verdict") {
  const std::string trace = "/tmp/gagliardo_test_trace.jsonl";
  std::remove(trace.c_str());
  const auto r = run_cli("optimize --T 5 --s 0.3 --p 2 --random --seed 7 --out " +
                         trace);
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("\"equispaced\": true") != std::string::npos);
  CHECK(r.output.find("\"termination\": \"converged\"") != std::string::npos);
  const std::string body = slurp(trace);
  CHECK(!body.empty());
  // one JSON object per line, first line is iteration 0
  CHECK(body.find("\"iter\"") != std::string::npos);
  std::remove(trace.c_str());
}

TEST_CASE("sweep-s0 CSV artifact has the pinned header and is reproducible") {
  const std::string csv = "/tmp/gagliardo_test_sweep.csv";
  std::remove(csv.c_str());
  const auto r1 = run_cli("sweep-s0 --T 1 --p 2 --out " + csv);
  CHECK(r1.exit_code == 0);
  const std::string first = slurp(csv);
  CHECK(first.rfind("param,raw,scaled,extrapolant,target", 0) == 0);

  const auto r2 = run_cli("sweep-s0 --T 1 --p 2 --out " + csv);
  CHECK(r2.exit_code == 0);
  CHECK(slurp(csv) == first);        // byte-identical artifact
  CHECK(r2.output == r1.output);     // byte-identical stdout
  std::remove(csv.c_str());
}

TEST_CASE("unwritable output path exits 4 with an IO error") {
  const auto r =
      run_cli("sweep-s0 --T 1 --p 2 --out /nonexistent-dir/sweep.csv");
  CHECK(r.exit_code == 4);
  CHECK(r.output.find("IOError") != std::string::npos);
}

TEST_CASE("spec file supplies defaults and flags override it") {
  const std::string spec = "/tmp/gagliardo_test_spec.json";
  {
    std::ofstream f(spec);
    f << "{\"command\":\"energy0\",\"T\":2,\"p\":2.0,\"equispaced\":true}\n";
  }
  const auto direct = run_cli("energy0 --equispaced --T 2 --p 2");
  const auto via_spec = run_cli("energy0 --spec " + spec);
  CHECK(via_spec.exit_code == 0);
  CHECK(via_spec.output == direct.output);  // byte-identical round trip

  // a flag overrides the spec value: p = 1 changes the result
  const auto overridden = run_cli("energy0 --spec " + spec + " --p 1");
  CHECK(overridden.exit_code == 0);
  CHECK(overridden.output != direct.output);

  CHECK(run_cli("energy0 --spec /nonexistent-spec.json").exit_code == 4);
  std::remove(spec.c_str());
}
