#include <doctest.h>

#include <cmath>
#include <limits>
#include <string>

#include "disslab/certificate.hpp"
#include "disslab/error.hpp"
#include "disslab/keyval.hpp"
#include "disslab/scenario.hpp"
#include "support.hpp"

using namespace disslab;
using keyval::Document;

namespace {

int parse_error_line(const std::string& text) {
  try {
    Document::parse(text);
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

int scenario_error_line(const std::string& text) {
  try {
    Scenario::from_document(Document::parse(text));
  } catch (const ParseError& e) {
    return e.line();
  }
  return -1;
}

const char* kScenario = R"(# test scenario
[scenario]
name = unit

[gas]
gamma = 2

[data]
rho_minus = 1
v_minus_1 = 0
v_minus_2 = 1.2247448713915889
rho_plus = 1
v_plus_1 = 0
v_plus_2 = -1.2247448713915889

[search]
grid_rho1 = 1.75:1.99:5
grid_C = 0.5:0.8:4
seed = 9
weak_tests = 3
)";

}  // namespace

TEST_CASE("keyval documents") {
  const auto doc = Document::parse("# c\n[a]\nx = 1.5\ny = hello world\n\n[a.b]\nflag = true\nn = -3\n");
  REQUIRE(doc.sections().size() == 2);
  const auto& a = doc.at("a");
  CHECK(a.get_double("x") == 1.5);
  CHECK(a.get_string("y") == "hello world");
  CHECK(a.at("y").line == 4);
  CHECK(doc.at("a.b").get_bool("flag"));
  CHECK(doc.at("a.b").get_int("n") == -3);
  CHECK_THROWS_AS(doc.at("a.b").get_uint("n"), ParseError);
  CHECK_THROWS_AS(a.get_double("y"), ParseError);
  CHECK_THROWS_AS(a.at("missing"), ParseError);
  CHECK_THROWS_AS(doc.at("nope"), ParseError);
  CHECK(Document::parse(doc.serialize()).serialize() == doc.serialize());
}

TEST_CASE("keyval errors carry the line") {
  CHECK(parse_error_line("x = 1\n") == 1);
  CHECK(parse_error_line("[a]\nx = 1\nx = 2\n") == 3);
  CHECK(parse_error_line("[a]\n\n[a]\n") == 3);
  CHECK(parse_error_line("[a\n") == 1);
  CHECK(parse_error_line("[a]\njunk\n") == 2);
  CHECK(parse_error_line("[a]\nbad key = 1\n") == 2);
}

TEST_CASE("doubles round-trip bit-exactly") {
  keyval::Document doc;
  auto& s = doc.add("v");
  const double values[] = {0.1, 1.0 / 3.0, -2.5e-300, 6.02214076e23, std::sqrt(1.5),
                           std::numeric_limits<double>::denorm_min()};
  for (int i = 0; i < 6; ++i) s.set("k" + std::to_string(i), values[i]);
  const auto back = Document::parse(doc.serialize());
  for (int i = 0; i < 6; ++i) CHECK(back.at("v").get_double("k" + std::to_string(i)) == values[i]);
  CHECK(keyval::format_double(0.1) == "0.10000000000000001");
}

TEST_CASE("scenario parsing") {
  const auto sc = Scenario::from_document(Document::parse(kScenario));
  CHECK(sc.name == "unit");
  CHECK(sc.gamma == 2.0);
  CHECK(sc.data.v_minus.normal == testing::kSqrt15);
  CHECK(sc.grid_rho1->n == 5);
  CHECK(sc.grid_C->lo == 0.5);
  CHECK(sc.seed == 9);
  CHECK(sc.weak_tests == 3);
  CHECK(sc.tol == 1e-10);
  CHECK(sc.margin_floor == 1e-6);

  keyval::Document doc;
  sc.write_to(doc, "echo.");
  const auto back = Scenario::from_document(Document::parse(doc.serialize()), "echo.");
  CHECK(back.name == sc.name);
  CHECK(back.data.v_plus.normal == sc.data.v_plus.normal);
  CHECK(back.grid_C->to_string() == sc.grid_C->to_string());
  CHECK(back.seed == sc.seed);
}

TEST_CASE("scenario validation errors") {
  std::string text = kScenario;
  text.replace(text.find("rho_minus = 1"), 13, "rho_minus = -1");
  CHECK(scenario_error_line(text) == 9);

  text = kScenario;
  text.replace(text.find("gamma = 2"), 9, "gamma = 0.5");
  CHECK(scenario_error_line(text) == 6);

  text = kScenario;
  text.replace(text.find("grid_C = 0.5:0.8:4"), 18, "grid_C = 0.5:0.8");
  CHECK(scenario_error_line(text) == 18);

  CHECK_THROWS_AS(Scenario::from_document(Document::parse("[scenario]\nname = x\n")), ParseError);
  CHECK_THROWS_AS(Scenario::load("/nonexistent/file.scn"), ParseError);
}

TEST_CASE("bundled scenarios load") {
  for (const char* name : {"symmetric_gamma1.scn", "symmetric_gamma1_4.scn", "symmetric_gamma2.scn",
                           "symmetric_gamma2_5.scn", "asymmetric_gamma1_4.scn", "no_feasible_gamma2.scn",
                           "zero_jump.scn"}) {
    CAPTURE(name);
    const auto sc = Scenario::load(testing::scenario_path(name));
    CHECK_NOTHROW(sc.validate());
  }
}

TEST_CASE("certificate round trip and tampering") {
  auto sc = Scenario::from_document(Document::parse(kScenario));
  const auto law = sc.law();
  const auto sub = solve_for(1.81, 0.775, sc.data, law).candidates.front();
  const auto cert = certify(sc, sub);
  CHECK(cert.dominant());
  CHECK(cert.status() == "dissipation-dominant");
  CHECK(cert.weak.count == 3);
  CHECK(verify(cert).passed());

  const auto text = cert.to_document().serialize();
  const auto back = Certificate::from_document(Document::parse(text));
  CHECK(back.to_document().serialize() == text);
  CHECK(verify(back).passed());

  auto tampered = back;
  tampered.sub.beta += 1e-3;
  auto result = verify(tampered);
  REQUIRE(result.first_failure());
  CHECK(result.first_failure()->name == "residuals");

  tampered = back;
  tampered.dissipation.gap = -tampered.dissipation.gap;
  result = verify(tampered);
  REQUIRE(result.first_failure());
  CHECK(result.first_failure()->name == "dissipation");

  tampered = back;
  tampered.weak.min_admissibility = 0.5;
  CHECK(verify(tampered).first_failure()->name == "weak_form");

  tampered = back;
  tampered.scenario.data.v_plus.normal = 2.0;
  CHECK(verify(tampered).first_failure()->name == "scenario");
}

TEST_CASE("certify rejects infeasible subsolutions") {
  auto sc = Scenario::from_document(Document::parse(kScenario));
  const auto ss = solve_middle_state(sc.data, sc.law());
  CHECK_THROWS_AS(certify(sc, embed_self_similar(ss)), InfeasibleError);
  auto broken = solve_for(1.81, 0.775, sc.data, sc.law()).candidates.front();
  broken.beta = 0.1;
  CHECK_THROWS_AS(certify(sc, broken), InfeasibleError);
}

TEST_CASE("certificate status") {
  Certificate c;
  c.dissipation.verdict = true;
  CHECK(c.status() == "dissipation-dominant");
  c.dissipation.verdict = false;
  CHECK_FALSE(c.dominant());
  CHECK(c.status() == "feasible but not dissipation-dominant");
}
