#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dtx/io/report.hpp"
#include "dtx/io/set_syntax.hpp"
#include "dtx/io/spec_file.hpp"
#include "support/generators.hpp"
#include "support/thrown.hpp"

using namespace dtx;
using dtx::testing::thrown_code;

namespace {

std::string field_of(const std::string& text) {
  try {
    io::parse_distribution(text);
  } catch (const io::spec_error& e) {
    return e.field();
  }
  return "<no error>";
}

}  // namespace

TEST_CASE("distribution files", "[io]") {
  const auto fb = io::parse_distribution(R"({"breakpoints": [{"x": 0, "atom": 0.5}, {"x": 1, "atom": 0.5}]})");
  CHECK(fb.eval(0.0) == 0.5);
  CHECK(fb.eval(1.0) == 1.0);

  const auto fm = io::parse_distribution(R"({
    "breakpoints": [{"x": 0.5, "atom": 0.25}],
    "segments": [{"from": 0, "to": 0.25, "increase": 0.25}, {"from": 0.5, "to": 1, "increase": 0.5}]})");
  CHECK(fm.eval(0.3) == 0.25);
  CHECK(fm.eval_left(0.5) == 0.25);
  CHECK(fm.eval(0.75) == 0.75);

  SECTION("segments spanning breakpoints are split by length") {
    const auto f = io::parse_distribution(R"({
      "breakpoints": [{"x": 0.25, "atom": 0.5}],
      "segments": [{"from": 0, "to": 1, "increase": 0.5}]})");
    CHECK(f.eval_left(0.25) == 0.125);
    CHECK(f.eval(0.25) == 0.625);
    CHECK(f.eval(1.0) == 1.0);
  }
  SECTION("base is rescaled away") {
    const auto f = io::parse_distribution(R"({"base": 0.5, "breakpoints": [{"x": 0, "atom": 1}]})");
    CHECK(f.eval(-1.0) == 0.0);
    CHECK(f.eval(0.0) == 1.0);
  }
  SECTION("round trip") {
    std::mt19937_64 rng(1616);
    for (int t = 0; t < 50; ++t) {
      const auto r = dtx::testing::random_cdf(rng);
      const auto back = io::parse_distribution(io::to_spec_json(r.cdf));
      for (double x : r.cdf.body().breakpoints()) {
        CHECK(std::abs(back.eval(x) - r.cdf.eval(x)) <= 1e-12);
        CHECK(std::abs(back.eval_left(x) - r.cdf.eval_left(x)) <= 1e-12);
      }
    }
  }
}

TEST_CASE("distribution file errors name the field", "[io]") {
  CHECK(field_of(R"({"breakpoints": [{"x": 0, "atom": 0.5}, {"x": 1, "atom": "half"}]})") == "breakpoints[1].atom");
  CHECK(field_of(R"({"breakpoints": [{"x": 0, "atom": 1}], "extra": 1})") == "extra");
  CHECK(field_of(R"({"segments": []})") == "breakpoints");
  CHECK(field_of(R"({"breakpoints": [{"x": 0, "atom": 0.5}, {"x": 0, "atom": 0.5}]})") == "breakpoints[1].x");
  CHECK(field_of(R"({"breakpoints": [], "segments": [{"from": 1, "to": 0, "increase": 1}]})") == "segments[0]");
  CHECK(field_of(R"({"breakpoints": [], "segments": [{"from": 0, "to": 2, "increase": 0.5},
                                                     {"from": 1, "to": 3, "increase": 0.5}]})") == "segments[1]");
  CHECK(field_of(R"({"breakpoints": [{"x": 0, "atom": 0.7}]})") == "breakpoints");
  CHECK(field_of(R"({"breakpoints": [{"x": 0, "atom": -1}, {"x": 1, "atom": 2}]})") == "breakpoints[0].atom");
  CHECK(field_of(R"({"breakpoints": [)") == "");
  CHECK(thrown_code([] { io::parse_distribution(R"({"base": 0.3, "breakpoints": [{"x": 0, "atom": 0}]})"); }) ==
        errc::degenerate_range);
}

TEST_CASE("interval union syntax", "[io]") {
  const auto a = io::parse_interval_union("(0.25, 0.5]");
  REQUIRE(a.size() == 1);
  CHECK(a[0] == Interval::left_open(0.25, 0.5));
  CHECK(io::parse_interval_union("[1,inf)")[0] == Interval::above(1.0, true));
  CHECK(io::parse_interval_union("(-inf, 0)")[0] == Interval::below(0.0, false));
  CHECK(io::parse_interval_union("{0.5}")[0] == Interval::point(0.5));
  CHECK(io::parse_interval_union("{0, 1}").size() == 2);
  CHECK(io::parse_interval_union("{}").empty());
  const auto u = io::parse_interval_union("(-inf,0) U [1, 2] U {3}");
  CHECK(u.size() == 3);
  CHECK(thrown_code([] { io::parse_interval_union("(0, 1"); }) == errc::malformed_set);
  CHECK(thrown_code([] { io::parse_interval_union("(0, x)"); }) == errc::malformed_set);
  CHECK(thrown_code([] { io::parse_interval_union("[2, 1]"); }) == errc::malformed_interval);
  CHECK(thrown_code([] { io::parse_interval_union("[-inf, 1]"); }) == errc::malformed_interval);
  CHECK(thrown_code([] { io::parse_interval_union("[0, 1] [2, 3]"); }) == errc::malformed_set);
}

TEST_CASE("report bodies are deterministic", "[io]") {
  auto make = [](double ms) {
    io::RunReport r;
    r.command = "dtx verify --dist a.json";
    r.inputs.push_back({"a.json", "00ff"});
    r.put("xi", 0.5);
    r.put("level_set", "[0, 1)");
    r.checks.push_back({"sandwich", true, 0.0, 0.0, ""});
    r.checks.push_back({"ks", false, 0.01, 0.005, "too far"});
    r.wall_clock_ms = ms;
    return r;
  };
  const auto a = make(1.0), b = make(250.0);
  CHECK(io::render_table_body(a) == io::render_table_body(b));
  CHECK(io::report_body_json(a).dump() == io::report_body_json(b).dump());
  CHECK(io::render_table(a) != io::render_table(b));
  CHECK_FALSE(a.all_passed());
  CHECK(io::report_body_json(a)["status"] == "fail");
  CHECK(io::render_table_body(a).find("FAIL") != std::string::npos);
}
