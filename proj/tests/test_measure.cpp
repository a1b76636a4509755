#include <catch2/catch_amalgamated.hpp>

#include <random>

#include "dtx/measure.hpp"
#include "dtx/transform.hpp"
#include "support/generators.hpp"
#include "support/thrown.hpp"

using namespace dtx;
using dtx::testing::bernoulli_half;
using dtx::testing::mixed_example;
using dtx::testing::thrown_code;
using dtx::testing::uniform01;

TEST_CASE("measure of single intervals", "[measure]") {
  const auto fm = mixed_example();
  CHECK(measure_interval(fm, Interval::left_open(0.25, 0.5)) == 0.25);
  CHECK(measure_interval(fm, Interval::point(0.5)) == 0.25);
  CHECK(measure_interval(bernoulli_half(), Interval::left_open(-2.0, 0.0)) == 0.5);
  CHECK(measure_interval(fm, Interval::open(0.5, 0.5)) == 0.0);
  CHECK(measure_interval(fm, Interval::whole()) == 1.0);
  CHECK(thrown_code([&] { measure_interval(fm, Interval::closed(1.0, 0.0)); }) == errc::malformed_interval);
  CHECK(thrown_code([&] { measure_interval(fm, Interval{-kInf, 0.0, true, false}); }) ==
        errc::malformed_interval);
}

TEST_CASE("measure of unions", "[measure]") {
  const auto fb = bernoulli_half();
  const RealSet s({Interval::below(0.0, false), Interval::above(1.0, true)});
  CHECK(measure_set(fb, s) == 0.5);
  CHECK(measure_set(fb, RealSet{}) == 0.0);
  CHECK(measure_set(uniform01(), RealSet::single(Interval::open(0.0, 1.0))) == 1.0);

  const std::vector<Interval> overlapping{Interval::closed(0.0, 1.0), Interval::closed(0.5, 2.0)};
  CHECK(thrown_code([&] { measure_set(fb, overlapping); }) == errc::malformed_set);
  const std::vector<Interval> touching{Interval::closed(0.0, 1.0), Interval::closed(1.0, 2.0)};
  CHECK(thrown_code([&] { measure_set(fb, touching); }) == errc::malformed_set);
  const std::vector<Interval> ok{Interval::right_open(0.0, 1.0), Interval::closed(1.0, 2.0)};
  CHECK(measure_set(fb, ok) == 1.0);
}

TEST_CASE("measure of level sets", "[measure]") {
  CHECK(measure_level_set(bernoulli_half(), 0.5) == 0.5);
  CHECK(measure_level_set(mixed_example(), 0.25) == 0.0);
  CHECK(measure_level_set(uniform01(), 0.5) == 0.0);
}

TEST_CASE("property: additivity over consecutive pieces", "[measure][property]") {
  std::mt19937_64 rng(707);
  std::uniform_real_distribution<double> ux(-6.0, 6.0);
  for (int t = 0; t < 200; ++t) {
    const auto r = dtx::testing::random_cdf(rng);
    const auto& f = r.cdf;
    double a = ux(rng), b = ux(rng);
    if (a > b) std::swap(a, b);
    std::vector<double> cuts{a, b};
    for (double x : f.body().breakpoints()) if (x > a && x < b) cuts.push_back(x);
    for (int k = 0; k < 5; ++k) cuts.push_back(a + (b - a) * std::uniform_real_distribution<double>(0, 1)(rng));
    std::sort(cuts.begin(), cuts.end());
    double sum = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size(); ++i) sum += measure_interval(f, Interval::left_open(cuts[i], cuts[i + 1]));
    INFO(r.label);
    CHECK(std::abs(sum - (f.eval(b) - f.eval(a))) <= 1e-12);
    CHECK(measure_set(f, RealSet::everything()) == 1.0);
  }
}

TEST_CASE("property: level-set measures and A+ null", "[measure][property]") {
  std::mt19937_64 rng(808);
  std::uniform_real_distribution<double> u01(0.0, 1.0);
  for (int t = 0; t < 200; ++t) {
    const auto r = dtx::testing::random_cdf(rng);
    const auto& f = r.cdf;
    std::vector<double> as = f.plateau_levels();
    for (int k = 0; k < 20; ++k) as.push_back(0.001 + 0.998 * u01(rng));
    for (double a : as) {
      INFO(r.label << " alpha=" << a);
      const auto d = quantile_detail(f, a);
      CHECK(measure_level_set(f, a) == measure_set(f, level_set(f, a)));
      if (d.flat()) {
        CHECK(measure_level_set(f, a) == a - d.left_at_xi);
        for (double lambda : {0.1, 0.5, 1.0}) CHECK(measure_set(f, a_decomposition(f, lambda, a).plus) == 0.0);
      }
    }
  }
}
