#ifndef DTX_VERIFY_HPP
#define DTX_VERIFY_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "dtx/cdf.hpp"
#include "dtx/copula.hpp"
#include "dtx/measure.hpp"
#include "dtx/monotone.hpp"
#include "dtx/stochastic.hpp"
#include "dtx/transform.hpp"

namespace dtx {

/// Arithmetic slack for value comparisons; set membership never uses it.
inline constexpr double kValueTolerance = 1e-12;

struct CheckResult {
  std::string name;
  bool passed = false;
  double value = 0.0;      // measured quantity (violation count, deviation, statistic)
  double threshold = 0.0;  // pass bound for `value`
  std::string detail;
};

/// Points that exercise every structural case: breakpoints, their close
/// neighbours on both sides, segment midpoints, and the two tails.
inline std::vector<double> probe_points(const Cdf& f) {
  const auto& xs = f.body().breakpoints();
  std::set<double> s;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double x = xs[i];
    const double scale = std::max(1.0, std::abs(x));
    for (double off : {0.0, 1e-7, -1e-7, 0.25, -0.25}) s.insert(x + off * scale);
    if (i + 1 < xs.size()) {
      const double w = xs[i + 1] - x;
      for (double t : {0.1, 0.5, 0.9}) s.insert(x + t * w);
    }
  }
  if (!xs.empty()) {
    s.insert(xs.front() - 1.0);
    s.insert(xs.back() + 1.0);
  }
  return {s.begin(), s.end()};
}

/// Levels in (0,1): a 99-point grid, every plateau level, interior points of
/// every jump interval, and every other value the levels of F take.
inline std::vector<double> probe_alphas(const Cdf& f) {
  std::set<double> s;
  auto add = [&s](double a) {
    if (a > 0.0 && a < 1.0) s.insert(a);
  };
  for (int k = 1; k <= 99; ++k) add(k / 100.0);
  for (double a : f.plateau_levels()) add(a);
  for (double x : f.jump_points()) {
    const double l = f.eval_left(x), r = f.eval(x);
    for (double t : {0.25, 0.5, 0.75}) add(l + t * (r - l));
  }
  for (double a : f.body().critical_levels()) add(a);
  return {s.begin(), s.end()};
}

namespace detail {

inline CheckResult count_check(std::string name, std::size_t violations, std::string detail = {}) {
  return {std::move(name), violations == 0, static_cast<double>(violations), 0.0, std::move(detail)};
}

inline CheckResult bound_check(std::string name, double value, double threshold,
                               std::string detail = {}) {
  return {std::move(name), value < threshold, value, threshold, std::move(detail)};
}

}  // namespace detail

/// Exact identities: every check is decided structurally or within
/// kValueTolerance on arithmetic.
inline std::vector<CheckResult> run_analytic_suite(const Cdf& f) {
  std::vector<CheckResult> out;
  const auto xs = probe_points(f);
  const auto alphas = probe_alphas(f);
  const double lambdas[] = {0.25, 0.5, 0.75, 1.0};
  const double tol = kValueTolerance;

  {
    const auto rep = df_condition_report(f.body());
    const bool ok = rep.consistent() && rep.cond_limits;
    out.push_back(detail::count_check("df_characterization", ok ? 0 : 1));
  }
  {
    std::size_t bad = 0;
    for (double x : xs) {
      for (double l : {0.0, 0.25, 0.5, 0.75, 1.0}) {
        const double v = transform(f, x, l);
        if (!(f.eval_left(x) <= v && v <= f.eval(x))) ++bad;
      }
      if (transform(f, x, 0.0) != f.eval_left(x) || transform(f, x, 1.0) != f.eval(x)) ++bad;
    }
    out.push_back(detail::count_check("transform_sandwich", bad));
  }
  {
    std::size_t bad = 0;
    for (double a : alphas) {
      const auto q = quantiles(f, a);
      if (!(f.eval_left(q.xi) <= a + tol && a <= f.eval(q.xi) + tol)) ++bad;
      if (!(f.eval_left(q.eta) <= a + tol && a <= f.eval(q.eta) + tol)) ++bad;
      if (q.xi > q.eta) ++bad;
      for (double delta : {1e-6, 1e-3, 1.0}) {
        if (!(f.eval(q.xi - delta) < a && a <= f.eval(q.xi + delta))) ++bad;
      }
      if (f.body().superlevel_set(a) != RealSet::single(Interval::above(q.xi, true))) ++bad;
    }
    out.push_back(detail::count_check("quantile_sandwich", bad));
  }
  {
    std::size_t bad = 0;
    const RealSet unit = RealSet::single(Interval::open(0.0, 1.0));
    for (double x : xs) {
      const RealSet r = quantile_range_of_point(f, x);
      const RealSet inner = RealSet::single(Interval::open(f.eval_left(x), f.eval(x))).intersect(unit);
      const RealSet outer = RealSet::single(Interval::closed(f.eval_left(x), f.eval(x))).intersect(unit);
      if (!inner.minus(r).empty() || !r.minus(outer).empty()) ++bad;
      // membership agrees with F^ at the interval ends
      for (const auto& iv : r.components()) {
        if (iv.lo_closed && left_quantile(f, iv.lo) != x) ++bad;
        if (iv.hi_closed && left_quantile(f, iv.hi) != x) ++bad;
      }
    }
    out.push_back(detail::count_check("quantile_range_inclusions", bad));
  }
  {
    std::size_t bad = 0;
    for (double a : alphas) {
      const auto d = quantile_detail(f, a);
      const RealSet ls = level_set(f, a);
      if (ls.empty() != (d.value_at_xi != a)) ++bad;
      const bool trivial = ls.empty() || ls == RealSet::single(Interval::point(d.xi));
      if (trivial != (d.xi == d.eta)) ++bad;
      if (d.flat() && ((f.jump(d.eta) == 0.0) != (d.value_at_eta == a))) ++bad;
      const bool beyond = !ls.intersect(RealSet::single(Interval::above(d.xi, false))).empty();
      if (beyond != d.flat()) ++bad;
    }
    out.push_back(detail::count_check("level_set_cases", bad));
  }
  {
    std::size_t bad = 0;
    for (double a : alphas) {
      for (double l : lambdas) {
        if (measure_set(f, a_decomposition(f, l, a).plus) != 0.0) ++bad;
      }
      const auto d = quantile_detail(f, a);
      if (d.flat() && measure_level_set(f, a) != a - d.left_at_xi) ++bad;
    }
    out.push_back(detail::count_check("flat_piece_measure", bad));
  }
  {
    std::size_t bad = 0;
    for (double a : alphas) {
      const auto d = quantile_detail(f, a);
      std::vector<double> pts = xs;
      for (double p : {d.xi, d.eta}) {
        for (double off : {0.0, 1e-7, -1e-7}) pts.push_back(p + off);
      }
      for (double l : lambdas) {
        const RealSet all = a_decomposition(f, l, a).all();
        for (double x : pts) {
          const double v = transform(f, x, l);
          if (std::abs(v - a) <= tol && f.jump(x) == 0.0) continue;
          if (all.contains(x) != (v <= a)) ++bad;
        }
      }
    }
    out.push_back(detail::count_check("a_decomposition_union", bad));
  }
  {
    std::size_t bad = 0;
    std::size_t skipped = 0;
    for (double l : lambdas) {
      const auto ns = null_set(f, l);
      if (measure_set(f, ns.plateau_union) != 0.0) ++bad;
      if (ns.hypothesis_holds() != (ns.total_measure == 0.0)) ++bad;
      const RealSet n_all = ns.all();
      for (double x : xs) {
        const double v = transform(f, x, l);
        if (!(v > 0.0 && v < 1.0)) continue;
        const double back = invert_transform(f, x, l);
        if (back > x + 1e-9) ++bad;
        if (n_all.contains(x)) {
          ++skipped;
          continue;
        }
        if (!detail::same_point(f, back, x)) ++bad;
      }
    }
    out.push_back(detail::count_check("ae_inversion", bad,
                                      std::to_string(skipped) + " probe points inside N_lambda"));
  }
  {
    double worst = 0.0;
    for (double a : alphas) worst = std::max(worst, std::abs(transform_cdf_exact(f, f, a).total - a));
    out.push_back(detail::bound_check("transform_cdf_exact", worst, 1e-12));
  }
  {
    std::size_t bad = 0;
    double worst = 0.0;
    const RealSet range = range_set(f);
    UniformSource u({0x5eed, 0});
    for (int rep = 0; rep < 100; ++rep) {
      std::vector<double> lam(f.jump_points().size());
      for (auto& l : lam) l = u();
      const auto alpha = phi(f, lam);
      for (double a : alpha) {
        if (range.contains(a)) ++bad;
      }
      const auto back = phi_inverse(f, alpha);
      for (std::size_t k = 0; k < lam.size(); ++k) worst = std::max(worst, std::abs(back[k] - lam[k]));
    }
    if (!jumps_match_quantiles(f)) ++bad;
    out.push_back(detail::count_check("phi_bijection", bad + (worst > 1e-12 ? 1 : 0),
                                      "max round-trip error " + format_real(worst)));
  }
  {
    std::size_t bad = 0;
    for (double x : f.jump_points()) {
      const double level = f.eval(x);
      if (image_atom(f, level) < f.jump(x)) ++bad;
    }
    out.push_back(detail::count_check("image_atoms", bad,
                                      f.jump_points().empty() ? "continuous: F(X) is uniform"
                                                              : "F(X) has atoms: not uniform"));
  }
  return out;
}

/// Monte Carlo confirmations. Streams: X from {seed, 0}, V from {seed, 1}.
inline std::vector<CheckResult> run_stochastic_suite(const Cdf& f, std::uint64_t seed,
                                                     std::size_t n) {
  std::vector<CheckResult> out;
  const SeededStream xs_stream{seed, 0};
  {
    const auto xs = sample_inverse(f, xs_stream, n);
    const auto us = distributional_transform(f, xs, xs_stream, xs_stream.next_stream());
    out.push_back(detail::bound_check("ks_uniformity", ks_uniformity(us), ks_critical_1pct(n)));
  }
  {
    const auto r = inversion_check(f, xs_stream, n);
    out.push_back(detail::count_check("inversion_check", r.failures + r.shortcut_failures,
                                      r.shortcut_applicable ? "shortcut F^(F(X)) checked"
                                                            : "shortcut not applicable"));
  }
  {
    double worst = 0.0;
    std::uint64_t k = 0;
    for (double a : {0.1, 0.25, 0.5, 0.75, 0.9}) {
      const double exact = transform_cdf_exact(f, f, a).total;
      const double est = estimate_transform_cdf(f, f, a, {seed, 10 + 2 * k++}, n);
      const double se = std::sqrt(exact * (1.0 - exact) / static_cast<double>(n));
      worst = std::max(worst, std::abs(est - exact) / se);
    }
    out.push_back(detail::bound_check("transform_cdf_monte_carlo", worst, 4.0,
                                      "deviation in binomial standard errors"));
  }
  {
    std::vector<double> axis = probe_points(f);
    for (auto dep : {Dependence::independent, Dependence::comonotone}) {
      const auto s = generate_joint_sample({f, f}, dep, n, seed);
      const auto c = dt_copula(s, {seed, 100});
      const double dev = sklar_identity_check(s, c, product_grid({axis, axis}));
      out.push_back(detail::bound_check(std::string("sklar_identity_") + to_string(dep), dev, 0.01));
    }
  }
  {
    const double rho = transform_left_correlation(f, {seed, 200}, n);
    out.push_back({"transform_left_correlation", true, rho, 0.0, "informational"});
  }
  return out;
}

struct CopulaCheckConfig {
  Dependence dependence = Dependence::independent;
  std::size_t n = 100000;
  std::uint64_t seed = 42;
  std::vector<double> grid;  // per-coordinate grid values; empty: breakpoints +- 0.25
};

/// Forward direction of Sklar's theorem on a generated sample, plus the
/// flat-level identity at every vector of plateau levels.
inline std::vector<CheckResult> run_copula_suite(const std::vector<Cdf>& marginals,
                                                 const CopulaCheckConfig& cfg) {
  std::vector<CheckResult> out;
  const auto s = generate_joint_sample(marginals, cfg.dependence, cfg.n, cfg.seed);
  const auto c = dt_copula(s, {cfg.seed, 1000});
  for (std::size_t j = 0; j < s.dim; ++j) {
    out.push_back(detail::bound_check("uniform_marginal_" + std::to_string(j),
                                      ks_uniformity(c.column(j)), ks_critical_1pct(cfg.n)));
  }
  std::vector<std::vector<double>> axes;
  for (const auto& m : marginals) {
    if (!cfg.grid.empty()) {
      axes.push_back(cfg.grid);
      continue;
    }
    std::set<double> pts;
    for (double x : m.body().breakpoints()) {
      pts.insert(x - 0.25);
      pts.insert(x);
      pts.insert(x + 0.25);
    }
    axes.emplace_back(pts.begin(), pts.end());
  }
  out.push_back(detail::bound_check("sklar_identity", sklar_identity_check(s, c, product_grid(axes)), 0.01));

  std::vector<std::vector<double>> levels;
  for (const auto& m : marginals) levels.push_back(m.plateau_levels());
  double worst = 0.0;
  std::size_t count = 0;
  const bool any_flat = std::all_of(levels.begin(), levels.end(), [](const auto& v) { return !v.empty(); });
  if (any_flat) {
    for (const auto& a : product_grid(levels)) {
      const auto [lhs, rhs] = copula_at_flat_alpha(s, c, a);
      worst = std::max(worst, std::abs(lhs - rhs));
      ++count;
    }
  }
  out.push_back(detail::bound_check("copula_at_flat_alpha", worst, 0.01,
                                    std::to_string(count) + " flat level vectors"));
  if (cfg.dependence != Dependence::independent) {
    double diag = 0.0;
    const auto target = cfg.dependence == Dependence::comonotone ? CopulaSpec::comonotone()
                                                                 : CopulaSpec::countermonotone();
    const bool all_continuous = std::all_of(marginals.begin(), marginals.end(),
                                            [](const Cdf& m) { return m.jump_points().empty(); });
    if (all_continuous) {
      for (double g : {0.25, 0.5, 0.75}) {
        std::vector<double> gamma(s.dim, g);
        diag = std::max(diag, std::abs(copula_eval(c, gamma) - copula_eval(target, gamma)));
      }
      out.push_back(detail::bound_check("diagonal_vs_closed_form", diag, 0.01));
    }
  }
  return out;
}

}  // namespace dtx

#endif  // DTX_VERIFY_HPP
