#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "disslab/app.hpp"
#include "support.hpp"

namespace fs = std::filesystem;
using namespace disslab;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = app::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(f), std::istreambuf_iterator<char>()};
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p, std::ios::binary) << text; }

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("disslab_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string replace_line(const std::string& text, const std::string& key, const std::string& value) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line)) {
    if (line.rfind(key + " =", 0) == 0) line = key + " = " + value;
    out += line + '\n';
  }
  return out;
}

// Small grid and few weak-form samples keep the round trips fast.
std::vector<std::string> quick_search(const fs::path& out) {
  const auto scn = out.parent_path() / "quick.scn";
  write(scn, replace_line(slurp(testing::scenario_path("symmetric_gamma2.scn")), "weak_tests", "4"));
  return {"search", "--scenario", scn.string(), "--out", out.string(),
          "--grid-rho1", "1.79:1.83:3", "--grid-C", "0.7:0.8:3"};
}

}  // namespace

TEST_CASE("classify") {
  auto r = run({"classify", "--scenario", testing::scenario_path("symmetric_gamma2.scn")});
  CHECK(r.code == 0);
  const auto at = r.out.find("two-shock: yes, margin ");
  REQUIRE(at != std::string::npos);
  CHECK(std::stod(r.out.substr(at + 22)) == doctest::Approx(2 * testing::kSqrt15).epsilon(1e-14));

  r = run({"classify", "--scenario", testing::scenario_path("zero_jump.scn")});
  CHECK(r.code == 2);
  CHECK(r.out.find("two-shock: no") != std::string::npos);

  const auto dir = scratch("classify");
  std::string text = slurp(testing::scenario_path("symmetric_gamma2.scn"));
  write(dir / "neg.scn", replace_line(text, "rho_plus", "-1"));
  r = run({"classify", "--scenario", (dir / "neg.scn").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("line ") != std::string::npos);
  CHECK(r.err.find("rho_plus") != std::string::npos);

  write(dir / "garbled.scn", "[gas]\ngamma 2\n");
  r = run({"classify", "--scenario", (dir / "garbled.scn").string()});
  CHECK(r.code == 1);
  CHECK(r.err.find("line 2") != std::string::npos);
}

TEST_CASE("selfsimilar") {
  auto r = run({"selfsimilar", "--scenario", testing::scenario_path("symmetric_gamma2.scn"), "--machine"});
  REQUIRE(r.code == 0);
  const auto doc = keyval::Document::parse(r.out);
  CHECK(doc.at("self_similar").get_double("rho_m") == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(doc.at("self_similar").get_double("nu2") == doctest::Approx(testing::kSqrt15).epsilon(1e-12));
  CHECK(doc.at("dissipation").get_double("D_self") == doctest::Approx(-11.022704).epsilon(1e-7));

  r = run({"selfsimilar", "--scenario", testing::scenario_path("symmetric_gamma2.scn"), "--L", "3", "--machine"});
  CHECK(keyval::Document::parse(r.out).at("dissipation").get_double("D_self") ==
        doctest::Approx(3 * -11.022703842524301).epsilon(1e-14));

  r = run({"selfsimilar", "--scenario", testing::scenario_path("symmetric_gamma1.scn")});
  CHECK(r.code == 0);
  CHECK(r.out.find("D_self") != std::string::npos);

  // Mirrored data: swapped and negated speeds.
  const auto dir = scratch("selfsimilar");
  std::string text = slurp(testing::scenario_path("asymmetric_gamma1_4.scn"));
  text = replace_line(text, "rho_minus", "1.5");
  text = replace_line(text, "rho_plus", "1");
  write(dir / "mirror.scn", text);
  const auto a = keyval::Document::parse(
      run({"selfsimilar", "--scenario", testing::scenario_path("asymmetric_gamma1_4.scn"), "--machine"}).out);
  const auto b = keyval::Document::parse(run({"selfsimilar", "--scenario", (dir / "mirror.scn").string(), "--machine"}).out);
  CHECK(b.at("self_similar").get_double("nu1") ==
        doctest::Approx(-a.at("self_similar").get_double("nu2")).epsilon(1e-12));
  CHECK(b.at("self_similar").get_double("v_bar") ==
        doctest::Approx(-a.at("self_similar").get_double("v_bar")).epsilon(1e-12));

  r = run({"selfsimilar", "--scenario", testing::scenario_path("zero_jump.scn")});
  CHECK(r.code == 2);
  CHECK(r.err.find("two-shock") != std::string::npos);
}

TEST_CASE("search, verify and tampering") {
  const auto dir = scratch("search");
  auto r = run(quick_search(dir / "a"));
  REQUIRE(r.code == 0);
  const auto cert_path = dir / "a" / "certificate.txt";
  REQUIRE(fs::exists(cert_path));

  const auto csv = slurp(dir / "a" / "grid.csv");
  CHECK(csv.rfind("rho1,C,feasible,m_trace,m_det,m_adm_left,m_adm_right,D_sub\n", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 10);
  CHECK(csv.find('\r') == std::string::npos);

  REQUIRE(run(quick_search(dir / "b")).code == 0);
  CHECK(slurp(dir / "b" / "grid.csv") == csv);
  CHECK(slurp(dir / "b" / "certificate.txt") == slurp(cert_path));

  r = run({"verify", cert_path.string()});
  CHECK(r.code == 0);
  CHECK(r.out.find("verify: PASS") != std::string::npos);

  const auto text = slurp(cert_path);
  const auto beta = keyval::Document::parse(text).at("subsolution").get_double("beta");
  write(dir / "beta.txt", replace_line(text, "beta", keyval::format_double(beta + 1e-3)));
  r = run({"verify", (dir / "beta.txt").string()});
  CHECK(r.code == 2);
  CHECK(r.out.find("verify: FAIL at residuals") != std::string::npos);

  const auto gap = keyval::Document::parse(text).at("dissipation").get_double("gap");
  write(dir / "gap.txt", replace_line(text, "gap", keyval::format_double(-gap)));
  r = run({"verify", (dir / "gap.txt").string()});
  CHECK(r.code == 2);
  CHECK(r.out.find("verify: FAIL at dissipation") != std::string::npos);

  write(dir / "corrupt.txt", text.substr(0, text.size() / 2) + "\n???\n");
  r = run({"verify", (dir / "corrupt.txt").string()});
  CHECK(r.code == 2);
  CHECK(r.out.find("verify: FAIL at format") != std::string::npos);

  r = run({"verify", (dir / "missing.txt").string()});
  CHECK(r.code == 1);
}

TEST_CASE("search without feasible points") {
  const auto dir = scratch("infeasible");
  const auto r = run({"search", "--scenario", testing::scenario_path("no_feasible_gamma2.scn"), "--out",
                      dir.string()});
  CHECK(r.code == 2);
  CHECK(fs::exists(dir / "grid.csv"));
  CHECK(fs::exists(dir / "search_report.txt"));
  CHECK_FALSE(fs::exists(dir / "certificate.txt"));
  const auto report = keyval::Document::load((dir / "search_report.txt").string());
  CHECK(report.at("result").get_uint("feasible_points") == 0);
}

TEST_CASE("argument errors") {
  CHECK(run({}).code == 1);
  CHECK(run({"bogus"}).code == 1);
  CHECK(run({"classify"}).code == 1);
  CHECK(run({"search", "--scenario", testing::scenario_path("symmetric_gamma2.scn"), "--grid-C", "1:0:3"}).code == 1);
  CHECK(run({"search", "--scenario", testing::scenario_path("zero_jump.scn"), "--out",
             scratch("zj").string()})
            .code == 1);  // no grid in the file
  CHECK(run({"--help"}).code == 0);
}

TEST_CASE("thread count from the environment") {
  ::setenv("DISSLAB_THREADS", "3", 1);
  CHECK(app::threads_from_env() == 3);
  ::setenv("DISSLAB_THREADS", "0", 1);
  CHECK(app::threads_from_env() == 0);
  ::setenv("DISSLAB_THREADS", "x", 1);
  CHECK(app::threads_from_env() == 0);
  ::unsetenv("DISSLAB_THREADS");
  CHECK(app::threads_from_env() == 0);
}
