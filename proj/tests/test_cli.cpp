#include "cli.hpp"
#include "support/files.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <sstream>
#include <string>
#include <vector>

using namespace hqc;
using namespace hqc::testing;

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome invoke(std::vector<std::string> args, const std::string& input = "") {
  args.insert(args.begin(), "hqc");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::istringstream in(input);
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), in, out, err);
  return {code, out.str(), err.str()};
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / ("hqc_test_" + name)).string();
}

}  // namespace

TEST_CASE("canon") {
  auto r = invoke({"canon", "p*q"});
  CHECK(r.code == 0);
  CHECK(r.out == "q*p - i\n");
  r = invoke({"--oracle", "canon", "p*V(q - x)"});
  CHECK(r.code == 0);
  CHECK(r.out == "V(q - x)*p - i*V'(q - x)\noracle: agree\n");
  r = invoke({"--modes", "2", "--func", "W", "canon", "p2*W(q2)"});
  CHECK(r.out == "W(q2)*p2 - i*W'(q2)\n");
}

TEST_CASE("bracket and eom") {
  auto r = invoke({"--oracle", "bracket", "--kind", "anderson", "x*q", "k*p"});
  CHECK(r.code == 0);
  CHECK(r.out == "i*q*p + i*x*k\noracle: agree\n");
  r = invoke({"eom", "--kind", "anderson", "--ham", "1/2*k*p^2", "x*q + q*x"});
  CHECK(r.out == "q*p^2 + 2*x*k*p\n");
  r = invoke({"eom", "--kind", "aleksandrov", "--ham", "x*p^2 + k*q^2", "x*p^2 + k*q^2"});
  CHECK(r.out == "0\n");
  r = invoke({"--oracle", "eom", "--kind", "anderson", "--ham", "1/2*p^2 + 1/2*k^2 + V(q - x)", "(p + k)^2"});
  CHECK(r.out == "-i*V''(q - x)\noracle: agree\n");
  r = invoke({"bracket", "--kind", "poisson", "--", "-x", "k"});
  CHECK(r.code == 0);
  CHECK(r.out == "-1\n");
}

TEST_CASE("exit codes") {
  auto r = invoke({"canon", "q*"});
  CHECK(r.code == cli::kParseError);
  CHECK(r.err.find("^") != std::string::npos);
  CHECK(invoke({"canon", "V(p)"}).code == cli::kValidationError);
  CHECK(invoke({"canon", "U(q)"}).code == cli::kValidationError);
  CHECK(invoke({"eom", "--kind", "poisson", "--ham", "q", "p"}).code == cli::kValidationError);
  CHECK(invoke({"bracket", "--kind", "alex2", "q", "p"}).code == cli::kValidationError);
  CHECK(invoke({"run", temp_path("missing.json")}).code == cli::kIoError);
  CHECK(invoke({"frobnicate"}).code == cli::kParseError);
  CHECK(invoke({"--modes", "0", "canon", "q"}).code == cli::kParseError);
  CHECK(invoke({"--help"}).code == 0);
}

TEST_CASE("run writes reports") {
  const std::string out_path = temp_path("report.json");
  auto r = invoke({"--out", out_path, "--assert", "--oracle", "run", scenario_path("momentum_v.json")});
  CHECK(r.code == 0);
  CHECK(r.out.find("FAIL") != std::string::npos);
  CHECK(r.out.find("oracle: 4/4 defects agree") != std::string::npos);
  const std::string first = slurp(out_path);
  CHECK(first.find("\"scenario\": \"momentum_v\"") != std::string::npos);
  invoke({"--out", out_path, "run", scenario_path("momentum_v.json")});
  CHECK(slurp(out_path) == first);
  std::remove(out_path.c_str());
}

TEST_CASE("assert mode") {
  const std::string path = temp_path("wrong.json");
  {
    std::ofstream f(path);
    f << R"({"version": 1, "symbols": {"quantum_modes": 1, "classical_dofs": 1},
             "definitions": {"H": "1/2*k*p^2"}, "bracket": "anderson",
             "checks": [{"kind": "hermiticity_of_eom", "observable": "x*q + q*x", "expect": "pass"}]})";
  }
  CHECK(invoke({"run", path}).code == 0);
  CHECK(invoke({"--assert", "run", path}).code == cli::kAssertionFailed);
  {
    std::ofstream f(path);
    f << R"({"version": 1, "symbols": {"quantum_modes": 1, "classical_dofs": 1},
             "bracket": "alex2", "checks": []})";
  }
  auto r = invoke({"run", path});
  CHECK(r.code == cli::kValidationError);
  CHECK(r.err.find("/bracket") != std::string::npos);
  {
    std::ofstream f(path);
    f << "{ not json";
  }
  CHECK(invoke({"run", path}).code == cli::kParseError);
  std::remove(path.c_str());
}

TEST_CASE("repl transcript") {
  const std::string script =
      "# comment\n"
      ":let H = 1/2*k*p^2\n"
      ":let A = x*q + q*x\n"
      ":eom anderson H A\n"
      ":eom aleksandrov H A\n"
      ":bracket commutator p q\n"
      ":check leibniz anderson H x q\n"
      ":check hermiticity_of_eom anderson H A\n"
      "p*q\n"
      "q*\n"
      ":nope\n"
      ":quit\n"
      "q\n";
  auto r = invoke({"repl"}, script);
  CHECK(r.code == 0);
  CHECK(r.out ==
        "H = 1/2*k*p^2\n"
        "A = 2*x*q\n"
        "q*p^2 + 2*x*k*p\n"
        "q*p^2 + 2*x*k*p - i*p\n"
        "-i\n"
        "FAIL defect: i*p\n"
        "FAIL defect: 2*i*p\n"
        "q*p - i\n"
        "parse error: expected operand, found end of input at position 2 (expected operand)\n"
        "  q*\n"
        "    ^\n"
        "validation error: unknown command ':nope' (try :help)\n");
}

TEST_CASE("repl oracle") {
  auto r = invoke({"--oracle", "repl"}, ":bracket anderson (x*q) (k*p)\n");
  CHECK(r.out == "i*q*p + i*x*k\noracle: agree\n");
}
