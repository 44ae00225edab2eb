#include "doctest.h"
#include "support.hpp"

#include "adelic/scenario.hpp"

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <sys/wait.h>

using namespace adelic;
using namespace testing_support;

namespace {

std::string error_of(const std::string& text) {
  try {
    parse_scenario(text, "t.json");
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

int run_cli(const std::string& args, std::string* out = nullptr) {
  const std::string tmp = "test_scenario_out.txt";
  const std::string cmd = std::string(ADELIC_CLI) + " " + args + " > " + tmp + " 2>&1";
  const int status = std::system(cmd.c_str());
  if (out) {
    std::ifstream in(tmp);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = ss.str();
  }
  std::remove(tmp.c_str());
  return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

std::string scenario(const std::string& name) { return std::string(SCENARIO_DIR) + "/" + name; }

const std::string kHead = R"({"schema": "adelic-scenario/1", "name": "t", "ring": {"kind": "integers"}, )";

}  // namespace

TEST_CASE("parsing a minimal scenario") {
  const Scenario s = parse_scenario(kHead + R"("primes": [["0"], ["2"], {"generators": ["3"], "dim": 0}]})");
  CHECK(s.name == "t");
  CHECK(s.poset.size() == 3);
  CHECK(s.poset.r() == 1);
  CHECK(s.variant == CubeVariant::Adelic);
  CHECK(s.commands.empty());
  CHECK(scenario_module(s).str() == BoundedComplex::unit(s.ring).str());
}

TEST_CASE("scenario errors name the location") {
  CHECK(error_of(kHead + R"("primes": [["0"]], "bogus": 1})") == "InvalidScenario: t.json: $: unknown field \"bogus\"");
  CHECK(error_of(kHead + R"("primes": [["0"], [7]]})") == "InvalidScenario: t.json: $.primes[1][0]: expected a string");
  CHECK(error_of("{\n \"schema\": \n}").rfind("ParseError: t.json:3:1: ", 0) == 0);
  CHECK(error_of(R"({"schema": "other/2"})") != "");
  CHECK(error_of(kHead + R"("primes": [["0"], ["2"]], "variant": "xyz"})").find("$.variant") != std::string::npos);
}

TEST_CASE("overriding primes") {
  Scenario s = load_scenario(scenario("hasse-z.json"));
  override_primes(s, "0;2");
  CHECK(s.poset.size() == 2);
  CHECK(primes_str(s.poset.closed_points()) == "{(2)}");
  CHECK_THROWS_AS(override_primes(s, "0;q"), Error);
}

TEST_CASE("scenario files load") {
  for (const char* f : {"hasse-z.json", "hasse-z-quotient.json", "remark85.json", "kxy-chain.json", "kxy-chain-corrupted.json",
                        "local-cohomology-z.json", "support-z6.json", "cosupport-z2.json", "bp-z2.json", "roundtrip-z.json",
                        "roundtrip-z4.json", "roundtrip-z-z2.json", "roundtrip-two-term.json"}) {
    CAPTURE(f);
    CHECK_NOTHROW(load_scenario(scenario(f)));
  }
  CHECK(load_scenario(scenario("remark85.json")).adelic_module.has_value());
}

TEST_CASE("CLI exit codes") {
  CHECK(run_cli("run " + scenario("hasse-z.json")) == 0);
  CHECK(run_cli("run " + scenario("hasse-z-quotient.json")) == 2);
  CHECK(run_cli("run " + scenario("kxy-chain.json")) == 3);
  CHECK(run_cli("run " + scenario("kxy-chain-corrupted.json")) == 2);
  CHECK(run_cli("run " + scenario("remark85.json")) == 2);
  CHECK(run_cli("run /nonexistent/none.json") == 1);
  CHECK(run_cli("verify pullback " + scenario("hasse-z.json") + " --stabilization-window 40") == 1);
}

TEST_CASE("CLI output") {
  std::string out;
  CHECK(run_cli("verify pullback " + scenario("hasse-z.json") + " --poset-primes \"0;2\" --format text", &out) == 0);
  CHECK(out.find("cube hasse-z: Pullback") != std::string::npos);
  CHECK(out.find("K_(3): acyclic") != std::string::npos);

  CHECK(run_cli("verify pullback " + scenario("hasse-z-quotient.json"), &out) == 2);
  CHECK(out.find("\"exit_code\": 2") != std::string::npos);
  CHECK(out.find("K_(3): Z_(3)/(3)") != std::string::npos);

  CHECK(run_cli("functor support " + scenario("support-z6.json") + " --format text", &out) == 0);
  CHECK(out.find("{(2),(3)}") != std::string::npos);

  CHECK(run_cli("cube check-law " + scenario("kxy-chain-corrupted.json") + " --format text", &out) == 2);
  CHECK(out.find("2 violation(s)") != std::string::npos);
}
