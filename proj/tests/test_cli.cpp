#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <unistd.h>
#include <cstdlib>
#include <fstream>
#include <regex>
#include <sstream>
#include <string>

#include <nlohmann/json.hpp>

namespace {

struct RunResult {
  int exit_code;
  std::string output;
};

RunResult run_cli(const std::string& args) {
  std::string cmd = std::string(CLASSEX_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::string out;
  char buf[4096];
  while (std::size_t n = fread(buf, 1, sizeof buf, pipe)) out.append(buf, n);
  int status = pclose(pipe);
  return {WEXITSTATUS(status), out};
}

std::string scrub_timings(std::string s) {
  // elapsed_ms values vary run to run; normalize before comparing reports
  static const std::regex re("\"elapsed_ms\": *[0-9]+");
  return std::regex_replace(s, re, "\"elapsed_ms\": 0");
}

}  // namespace

TEST_CASE("audit name:Frob21 exits 0 and lists the 3A+7A subset") {
  auto r = run_cli("audit name:Frob21");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("3A,7A") != std::string::npos);
  REQUIRE(r.output.find("no non-soluble spans") != std::string::npos);
}

TEST_CASE("square coset form reports the coset structure") {
  auto r = run_cli("square psigmal2:8,3 --coset-of psl2:8");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("(yL)^2 = y^2 L: yes") != std::string::npos);
  REQUIRE(r.output.find("D_{yL} = G minus L: yes") != std::string::npos);
}

TEST_CASE("square with violating class exits 1") {
  auto r = run_cli("square alt:5 --classes 5A");
  REQUIRE(r.exit_code == 1);
  REQUIRE(r.output.find("violating class") != std::string::npos);
}

TEST_CASE("classes human output lists 5 Frob21 classes with identity rep ()") {
  auto r = run_cli("classes name:Frob21");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("1A") != std::string::npos);
  REQUIRE(r.output.find("()") != std::string::npos);
  REQUIRE(r.output.find("7B") != std::string::npos);
}

TEST_CASE("parse errors exit 2") {
  REQUIRE(run_cli("classes bogus:99").exit_code == 2);
  REQUIRE(run_cli("nonsense").exit_code == 2);
  REQUIRE(run_cli("audit alt:5 --predicate wat").exit_code == 2);
}

TEST_CASE("ctbl subcommands") {
  std::string tables = std::string(CLASSEX_DATA_DIR) + "/tables";
  auto chk = run_cli("ctbl check " + tables + "/M11.json");
  REQUIRE(chk.exit_code == 0);
  REQUIRE(chk.output.find("orthogonality verified") != std::string::npos);
  auto triple = run_cli("ctbl triple " + tables + "/Alt5.json 5A 5A 3A");
  REQUIRE(triple.exit_code == 0);
  REQUIRE(triple.output.find("= 3") != std::string::npos);
  auto hj = run_cli("ctbl hj " + tables + "/Frob21.json 7A 7A 7B");
  REQUIRE(hj.exit_code == 1);  // not a single-class product
}

TEST_CASE("paper-suite fast exits 0") {
  auto r = run_cli("paper-suite --tier fast --seed 7");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("[fail]") == std::string::npos);
}

namespace {
std::string temp_path(const std::string& tag) {
  std::string tmpl = "/tmp/classex_cli_" + tag + "_XXXXXX";
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back(0);
  int fd = mkstemp(buf.data());
  REQUIRE(fd >= 0);
  close(fd);
  return std::string(buf.data());
}
}  // namespace

TEST_CASE("identical invocations with identical seeds give identical reports") {
  std::string out1 = temp_path("r1");
  std::string out2 = temp_path("r2");
  auto r1 = run_cli("paper-suite --tier fast --seed 99 --json " + out1);
  auto r2 = run_cli("paper-suite --tier fast --seed 99 --json " + out2);
  REQUIRE(r1.exit_code == 0);
  REQUIRE(r2.exit_code == 0);
  std::ifstream f1(out1), f2(out2);
  std::stringstream s1, s2;
  s1 << f1.rdbuf();
  s2 << f2.rdbuf();
  REQUIRE(scrub_timings(s1.str()) == scrub_timings(s2.str()));
  // version and data checksums are embedded
  auto doc = nlohmann::json::parse(s1.str());
  REQUIRE(doc.contains("version"));
  REQUIRE(doc.contains("data_checksums"));
  REQUIRE(doc["data_checksums"].size() >= 8);
  std::remove(out1.c_str());
  std::remove(out2.c_str());
}

TEST_CASE("audit JSON report has the documented shape") {
  std::string out = temp_path("audit");
  auto r = run_cli("audit name:Frob21 --json " + out);
  REQUIRE(r.exit_code == 0);
  std::ifstream f(out);
  auto doc = nlohmann::json::parse(f);
  REQUIRE(doc["group"] == "name:Frob21");
  REQUIRE(doc["predicate"] == "expansion");
  REQUIRE(doc["violations"].is_array());
  REQUIRE(doc["violations"].empty());
  bool found = false;
  for (const auto& e : doc["satisfying_subsets"]) {
    REQUIRE(e.contains("classes"));
    REQUIRE(e.contains("span_order"));
    REQUIRE(e.contains("soluble"));
    if (e["classes"] == nlohmann::json({"3A", "7A"})) found = true;
  }
  REQUIRE(found);
  std::remove(out.c_str());
}

TEST_CASE("dk output names the closure classes") {
  auto r = run_cli("dk name:Frob21 --classes 7A");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("7A 7B") != std::string::npos);
}

TEST_CASE("probe emits (i) and (ii) data") {
  auto r = run_cli("probe name:M11 --class 5A");
  REQUIRE(r.exit_code == 0);
  REQUIRE(r.output.find("(i) C*C has even order: yes") != std::string::npos);
  REQUIRE(r.output.find("(ii) t in 2A") != std::string::npos);
}

TEST_CASE("config file can lower the enumeration cap") {
  std::string cfg = temp_path("cfg");
  {
    std::ofstream f(cfg);
    f << "{\"enumeration_cap\": 10}\n";
  }
  auto r = run_cli("--config " + cfg + " classes alt:5");
  REQUIRE(r.exit_code == 1);  // cap refusal surfaces as a runtime error
  std::remove(cfg.c_str());
}
