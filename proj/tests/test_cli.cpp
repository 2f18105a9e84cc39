#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <array>
#include <cstdio>
#include <fstream>
#include <string>

#include <json.hpp>

#include "doctest.h"

namespace {

struct CliResult {
  int exit_code = -1;
  std::string out;
};

CliResult run_cli(const std::string& args) {
  const std::string cmd = std::string(PTB_CLI_PATH) + " " + args + " 2>/dev/null";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  CliResult res;
  std::array<char, 4096> buf;
  size_t got;
  while ((got = fread(buf.data(), 1, buf.size(), pipe)) > 0) res.out.append(buf.data(), got);
  const int status = pclose(pipe);
  res.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return res;
}

using Json = nlohmann::json;

}  // namespace

TEST_CASE("identities command: clean run, stable schema") {
  CliResult r = run_cli("identities --n 4");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["tool_version"] == "1.0.0");
  CHECK(j["command"] == "identities");
  CHECK(j["n"] == 4);
  CHECK(j["checks"].is_array());
  for (const auto& c : j["checks"]) CHECK(c["status"] == "pass");
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("identities").exit_code == 2);          // missing --n
  CHECK(run_cli("identities --n 2").exit_code == 2);    // not hyperbolic
  CHECK(run_cli("nonsense --n 4").exit_code == 2);      // unknown command
  CHECK(run_cli("fiber-sum --n 4 --slope 4,2").exit_code == 2);   // imprimitive slope
  CHECK(run_cli("counterexample --n 5").exit_code == 2);          // no extra component
  CHECK(run_cli("monodromy --word \"L X\"").exit_code == 2);      // bad word
  CHECK(run_cli("identities --n 4 --format csv").exit_code == 2); // csv unsupported here
}

TEST_CASE("byte-identical reports for identical configurations") {
  const std::string args = "fiber-sum --n 4 --slope 1,0 --samples 3 --seed 11";
  CliResult a = run_cli(args);
  CliResult b = run_cli(args);
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  CHECK(!a.out.empty());

  // different seed changes the drawn targets
  CliResult c = run_cli("fiber-sum --n 4 --slope 1,0 --samples 3 --seed 12");
  CHECK(c.out != a.out);
}

TEST_CASE("fiber-sum: vanishing residuals off the extra-component bundles") {
  CliResult r = run_cli("fiber-sum --n 5 --slope 2,1 --samples 2 --seed 3");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  for (const auto& run : j["runs"]) {
    CHECK(run["geometric"]["normalized_residual"].get<double>() < 1e-8);
    CHECK(run["geometric"]["roots"].size() ==
          run["geometric"]["fiber_degree"].get<size_t>());
  }
}

TEST_CASE("fiber-sum: explicit non-generic target is reported as a failure") {
  CliResult r = run_cli("fiber-sum --n 4 --slope 1,0 --c 2");
  CHECK(r.exit_code == 1);
  Json j = Json::parse(r.out);
  CHECK(j["checks"][0]["name"] == "execution");
  CHECK(j["checks"][0]["status"] == "fail");
}

TEST_CASE("fiber-sum: negative q slope is normalized") {
  CliResult r = run_cli("fiber-sum --n 4 --slope -1,0 --samples 1 --seed 5");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["slope"][0] == 1);
  CHECK(j["slope"][1] == 0);
}

TEST_CASE("counterexample command reports the corrected component arithmetic") {
  CliResult r = run_cli("counterexample --n 6 --q-list 0 --samples 3 --seed 9");
  CHECK(r.exit_code == 1);  // the nonzero-total expectation genuinely fails
  Json j = Json::parse(r.out);
  bool closed = false, nonzero = true, exact_cancel = false;
  for (const auto& c : j["checks"]) {
    const std::string name = c["name"];
    if (name.rfind("closed_form_match", 0) == 0) closed = (c["status"] == "pass");
    if (name.rfind("total_nonzero", 0) == 0) nonzero = (c["status"] == "pass");
    if (name.rfind("exact_residue_cancellation", 0) == 0)
      exact_cancel = (c["status"] == "pass");
  }
  CHECK(closed);
  CHECK_FALSE(nonzero);
  CHECK(exact_cancel);
  CHECK(j["results"][0]["exact"]["total"] == "0");
}

TEST_CASE("monodromy command prints the pinned torsion polynomial") {
  CliResult r = run_cli("monodromy --word \"L R^-6\" --torsion");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["word"] == "L R^-6");
  CHECK(j["torsion_polynomial"] ==
        "-4*x1*x3^3 + x3^4 + 3*x2*x3^2 + 6*x1*x3 - 3*x3^2 - 2*x2 + 4");

  CliResult act = run_cli("monodromy --word \"L\"");
  Json ja = Json::parse(act.out);
  CHECK(ja["action"]["P1"] == "x3");
  CHECK(ja["action"]["P2"] == "x2");
  CHECK(ja["action"]["P3"] == "x2*x3 - x1");
}

TEST_CASE("csv output flattens roots one per row") {
  CliResult r = run_cli("fiber-sum --n 4 --slope 1,0 --samples 1 --seed 11 --format csv");
  CHECK(r.exit_code == 0);
  size_t lines = 0;
  for (char ch : r.out)
    if (ch == '\n') ++lines;
  Json j = Json::parse(run_cli("fiber-sum --n 4 --slope 1,0 --samples 1 --seed 11").out);
  const size_t degree = j["runs"][0]["geometric"]["fiber_degree"].get<size_t>();
  CHECK(lines == degree + 1);  // header + one row per root
  CHECK(r.out.rfind("command,n,p,q,component", 0) == 0);
}

TEST_CASE("torsion-lambda evaluates the pinned value") {
  CliResult r = run_cli("torsion-lambda --n 4 --y 0");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["value"][0].get<double>() == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(j["value"][1].get<double>() == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("sweep runs a job list in parallel and deterministically") {
  const char* jobs = R"([
    {"name": "b-fiber", "command": "fiber-sum", "n": 4, "slope": [1, 0], "samples": 2, "seed": 7},
    {"name": "a-ident", "command": "identities", "n": 3},
    {"name": "c-mono", "command": "monodromy", "word": "L R^-5", "torsion": true}
  ])";
  {
    std::ofstream f("sweep_jobs_test.json");
    f << jobs;
  }
  CliResult a = run_cli("sweep --jobs sweep_jobs_test.json --threads 3");
  CliResult b = run_cli("sweep --jobs sweep_jobs_test.json --threads 1");
  CHECK(a.exit_code == 0);
  CHECK(a.out == b.out);
  Json j = Json::parse(a.out);
  REQUIRE(j["jobs"].size() == 3);
  CHECK(j["jobs"][0]["name"] == "a-ident");
  CHECK(j["jobs"][1]["name"] == "b-fiber");
  CHECK(j["jobs"][2]["name"] == "c-mono");
  std::remove("sweep_jobs_test.json");
}

TEST_CASE("jacobi-selftest command") {
  CliResult r = run_cli("jacobi-selftest --seed 5 --trials 25");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["failures"] == 0);
  CHECK(j["worst_residual"].get<double>() < 1e-9);
}

TEST_CASE("extended precision lane produces a valid report") {
  CliResult r = run_cli("fiber-sum --n 4 --slope 1,0 --samples 1 --seed 2 --precision extended");
  CHECK(r.exit_code == 0);
  Json j = Json::parse(r.out);
  CHECK(j["precision"] == "extended");
  CHECK(j["runs"][0]["geometric"]["normalized_residual"].get<double>() < 1e-10);
}
