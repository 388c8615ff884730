#include <doctest.h>

#include "charsum/acceptance.hpp"
#include "charsum/errors.hpp"
#include "charsum/jobs.hpp"

using namespace charsum;
using nlohmann::json;

namespace {

JobOutcome run(const char* text, JobOptions o = {}) { return run_job(json::parse(text), o); }

const json& case_named(const json& report, const std::string& name) {
  for (const json& c : report["cases"])
    if (c.value("case", "") == name) return c;
  throw std::runtime_error("no case " + name);
}

}  // namespace

TEST_SUITE("jobs") {
  TEST_CASE("multiplication formula job over F_7 passes") {
    JobOutcome r = run(R"({"kind": "hd", "p": 7, "s": 1, "n": 3, "lambda": "all"})");
    CHECK(r.exit_code == kExitPass);
    CHECK(r.report["summary"]["cases"] == 6);
    CHECK(r.report["summary"]["failed"] == 0);
  }

  TEST_CASE("monomial transform job reports b and c") {
    JobOutcome r = run(R"({"kind": "monom", "p": 7, "exponents": [3, -1], "characters": ["trivial", "ε_3"], "a": 1})");
    CHECK(r.exit_code == kExitPass);
    const json& s = case_named(r.report, "solution");
    CHECK(s["b"] == 6);
    CHECK(s["c"]["M"] == 1);
    CHECK(s["c"]["coeffs"] == json::array({7}));
  }

  TEST_CASE("character spellings are equivalent") {
    const char* forms[] = {R"("eps_3")", R"("eps3")", R"("ε3")", "2", "[1, 2]", R"({"degree": 1, "index": 2})"};
    std::string first;
    for (const char* f : forms) {
      std::string job = std::string(R"({"kind": "gauss", "p": 7, "lambda": [)") + f + "]}";
      JobOutcome r = run(job.c_str());
      REQUIRE(r.exit_code == kExitPass);
      std::string g = r.report["cases"][0]["g"].dump();
      if (first.empty()) first = g;
      CHECK(g == first);
    }
  }

  TEST_CASE("schema violations exit 2") {
    for (const char* bad : {R"([1, 2])", R"({"p": 7})", R"({"kind": "nope", "p": 7})", R"({"kind": "monom", "p": 7})",
                            R"({"kind": "monom", "p": 8, "exponents": [1, 1], "characters": [0, 0]})",
                            R"({"kind": "monom", "p": 7, "exponents": [3, -1], "characters": ["trivial"]})",
                            R"({"kind": "gauss", "p": 7, "lambda": ["eps_4"]})",
                            R"({"kind": "hd", "p": 7, "n": 4})", R"({"kind": "monom", "p": 7, "exponents": [2, 1],
                                "characters": [0, 0], "a": 0})"}) {
      JobOutcome r = run(bad);
      CHECK_MESSAGE(r.exit_code == kExitSchema, bad);
      CHECK(r.report.contains("error"));
    }
  }

  TEST_CASE("size bound exits 3") {
    JobOptions o;
    o.max_grid = 10;
    JobOutcome r = run(R"({"kind": "monom", "p": 7, "exponents": [3, -1], "characters": ["trivial", "eps_3"]})", o);
    CHECK(r.exit_code == kExitSize);
    CHECK(r.report["error"]["type"] == "size_bound");
  }

  TEST_CASE("exceptions map onto the exit-code contract") {
    auto code = [](auto ex) { return classify_exception(std::make_exception_ptr(ex)).exit_code; };
    CHECK(code(SchemaError("x")) == kExitSchema);
    CHECK(code(DomainError("x")) == kExitSchema);
    CHECK(code(TowerError("x")) == kExitSchema);
    CHECK(code(UnsupportedError("x")) == kExitSchema);
    CHECK(code(SizeBoundError("x")) == kExitSize);
    CHECK(code(InvariantError("x")) == kExitInvariant);
    CHECK(code(std::runtime_error("x")) == kExitInvariant);
  }

  TEST_CASE("reports are byte-identical across runs") {
    for (const char* job : {R"({"kind": "divisor", "N": 6, "trials": 30, "seed": 4})",
                            R"({"kind": "norm", "p": 3, "factor_degrees": [2, 1], "ranks": [1, -2],
                                "characters": ["trivial", "trivial"], "depth": 2})",
                            R"({"kind": "identity", "p": 7, "monomial": [{"n": 2}, {"n": -1}]})",
                            R"({"kind": "stalk", "p": 5, "exponents": [2, -2], "characters": [2, 2], "a": 3, "grid": true})"}) {
      JobOutcome a = run(job), b = run(job);
      CHECK_MESSAGE(a.exit_code == kExitPass, a.report.dump());
      CHECK(a.report.dump() == b.report.dump());
    }
  }

  TEST_CASE("advisory floats are attached only on request") {
    const char* job = R"({"kind": "gauss", "p": 5, "lambda": [1]})";
    CHECK_FALSE(run(job).report["cases"][0]["g"].contains("advisory"));
    JobOptions o;
    o.emit_floats = true;
    json g = run(job, o).report["cases"][0]["g"];
    REQUIRE(g.contains("advisory"));
    double re = g["advisory"]["re"], im = g["advisory"]["im"];
    CHECK(re * re + im * im == doctest::Approx(5.0));
  }

  TEST_CASE("a broken monomial is refuted, a norm datum verified") {
    JobOutcome r = run(R"({"kind": "identity", "p": 7, "monomial": [{"degree": 1, "index": 0, "n": 2}, {"n": -1}]})");
    CHECK(r.exit_code == kExitPass);
    CHECK(case_named(r.report, "find_violation")["status"] == "witness");
    JobOutcome n = run(R"({"kind": "norm", "p": 3, "factor_degrees": [2], "ranks": [1], "characters": ["trivial"], "a": 2})");
    CHECK(n.exit_code == kExitPass);
    CHECK(case_named(n.report, "pairing")["m"] == 1);
  }

  TEST_CASE("sampled criteria give the same verdict for different seeds") {
    for (std::uint64_t seed : {1u, 2u, 77u}) {
      AcceptanceOptions o;
      o.seed = seed;
      CHECK(run_criterion(4, o).correct);
      CHECK(run_criterion(8, o).correct);
    }
  }

  TEST_CASE("unknown suites are schema errors") { CHECK(run_suite("nightly", {}).exit_code == kExitSchema); }
}
