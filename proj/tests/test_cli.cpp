#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

#include "kpos/json_io.hpp"
#include "kpos/maps.hpp"

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run(const std::string& args) {
  const char* bin = std::getenv("KPOS_CLI_BIN");
  REQUIRE(bin != nullptr);
  std::string cmd = std::string(bin) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (size_t got = fread(buf, 1, sizeof buf, pipe)) out.append(buf, got);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

// the reports end with a "name = value" line; JSON body precedes it
nlohmann::json json_body(const std::string& out) {
  auto start = out.find('{');
  auto end = out.rfind('}');
  REQUIRE(start != std::string::npos);
  return nlohmann::json::parse(out.substr(start, end - start + 1));
}

}  // namespace

TEST_CASE("bounds command") {
  RunResult r = run("bounds --n-max 4 --k-max 4");
  CHECK(r.exit_code == 0);
  CHECK(r.output.find("n,k,r_k") != std::string::npos);
  CHECK(r.output.find("3,2,2,2,17/15") != std::string::npos);

  RunResult j = run("bounds --n-max 5 --k-max 1 --format json");
  CHECK(j.exit_code == 0);
  nlohmann::json parsed = json_body(j.output);
  CHECK(parsed["schema"] == "kpos/1");
  bool row51 = false;
  for (const auto& e : parsed["rows"])
    if (e["n"] == 5 && e["k"] == 1) {
      row51 = true;
      CHECK(e["d_k_upper"] == "5");
    }
  CHECK(row51);
}

TEST_CASE("norm command") {
  RunResult r = run("norm --map transpose --n 3 --which cb");
  CHECK(r.exit_code == 0);
  nlohmann::json j = json_body(r.output);
  CHECK(double(j["cb"]) == doctest::Approx(3.0).epsilon(1e-6));

  RunResult t = run("norm --map tomiyama --n 3 --k 2 --which cb");
  CHECK(t.exit_code == 0);
  CHECK(double(json_body(t.output)["cb"]) == doctest::Approx(17.0 / 15.0).epsilon(1e-6));

  RunResult d = run("norm --map identity --n 2 --which diamond");
  CHECK(d.exit_code == 0);
  CHECK(double(json_body(d.output)["diamond"]) == doctest::Approx(1.0).epsilon(1e-6));

  RunResult dec = run("norm --map covariant:1,0 --n 3 --k 2 --which dec");
  CHECK(dec.exit_code == 0);
  CHECK(double(json_body(dec.output)["value"]) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("norm command via file spec") {
  std::string path = "cli_test_map.json";
  {
    std::ofstream out(path);
    out << kpos::superop_to_json(kpos::transpose_map(2)).dump();
  }
  RunResult r = run("norm --map file:" + path + " --which cb");
  std::remove(path.c_str());
  CHECK(r.exit_code == 0);
  CHECK(double(json_body(r.output)["cb"]) == doctest::Approx(2.0).epsilon(1e-6));
}

TEST_CASE("check command and exit codes") {
  RunResult cert = run("check --map tomiyama --n 4 --k 2");
  CHECK(cert.exit_code == 0);
  nlohmann::json j = json_body(cert.output);
  CHECK(j["verdict"] == "Certified");
  CHECK(j["method"] == "CovariantExact");

  RunResult ref = run("check --map tomiyama --n 4 --k 3");
  CHECK(ref.exit_code == 0);
  nlohmann::json jr = json_body(ref.output);
  CHECK(jr["verdict"] == "Refuted");
  CHECK(jr.contains("witness"));

  RunResult cp = run("check --map identity --n 3 --k 3");
  CHECK(cp.exit_code == 0);
  CHECK(json_body(cp.output)["method"] == "ChoiPSD");

  // transpose at k = 1 is positive: see-saw finds nothing -> exit 4
  RunResult inc = run("check --map transpose --n 2 --k 1");
  CHECK(inc.exit_code == 4);
  CHECK(json_body(inc.output)["verdict"] == "Inconclusive");
}

TEST_CASE("usage errors exit 2") {
  CHECK(run("norm --map nosuchmap --n 2").exit_code == 2);
  CHECK(run("norm --map tomiyama").exit_code == 2);
  CHECK(run("norm --map file:/does/not/exist.json").exit_code == 2);
  CHECK(run("bounds --format yaml").exit_code == 2);
  CHECK(run("nosuchcommand").exit_code == 2);
}

TEST_CASE("gue-width command") {
  RunResult r = run("gue-width --p 16 --samples 50 --seed 1");
  CHECK(r.exit_code == 0);
  nlohmann::json j = json_body(r.output);
  CHECK(double(j["estimate"]) > 0.0);
  CHECK(double(j["estimate"]) <= 2.0 * 4.0);  // 2 sqrt(p)
  // determinism
  RunResult r2 = run("gue-width --p 16 --samples 50 --seed 1");
  CHECK(r2.output == r.output);
}

TEST_CASE("sample command") {
  RunResult r = run("sample --n 3 --k 2 --samples 2 --seed 7");
  CHECK(r.exit_code == 0);
  nlohmann::json j = json_body(r.output);
  CHECK(double(j["best"]) >= 17.0 / 15.0 - 1e-6);
  CHECK(j["records"].size() == 2);
}
