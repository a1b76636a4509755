#ifndef DTX_MEASURE_HPP
#define DTX_MEASURE_HPP

#include <cmath>
#include <concepts>
#include <stdexcept>
#include <vector>

#include "dtx/cdf.hpp"
#include "dtx/error.hpp"
#include "dtx/real_set.hpp"

namespace dtx {

/// Anything right-continuous and nondecreasing that can report G(x), G(x-)
/// and its limits at -inf/+inf.
template <class G>
concept StieltjesFunction = requires(const G& g, double x) {
  { g.eval(x) } -> std::convertible_to<double>;
  { g.eval_left(x) } -> std::convertible_to<double>;
  { g.base() } -> std::convertible_to<double>;
  { g.top() } -> std::convertible_to<double>;
};

/// Lebesgue-Stieltjes measure of one interval:
///   (x,y] -> G(y) - G(x)      (x,y) -> G(y-) - G(x)
///   [x,y] -> G(y) - G(x-)     [x,y) -> G(y-) - G(x-)
/// Unbounded ends use the limits of G.
template <StieltjesFunction G>
double measure_interval(const G& g, const Interval& iv) {
  if (!iv.well_formed()) {
    throw error(errc::malformed_interval, iv.to_string() + " is not a well-formed interval");
  }
  if (iv.empty()) return 0.0;
  const double lower = std::isinf(iv.lo) ? g.base() : (iv.lo_closed ? g.eval_left(iv.lo) : g.eval(iv.lo));
  const double upper = std::isinf(iv.hi) ? g.top() : (iv.hi_closed ? g.eval(iv.hi) : g.eval_left(iv.hi));
  return upper - lower;
}

template <StieltjesFunction G>
double measure_set(const G& g, const RealSet& s) {
  double total = 0.0;
  for (const auto& iv : s.components()) total += measure_interval(g, iv);
  return total;
}

/// Measure of a raw component list, which must already be sorted and
/// pairwise disjoint.
template <StieltjesFunction G>
double measure_set(const G& g, const std::vector<Interval>& parts) {
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (!parts[i].well_formed()) {
      throw error(errc::malformed_set, "component " + std::to_string(i) + " is malformed");
    }
    if (i > 0) {
      const auto& a = parts[i - 1];
      const auto& b = parts[i];
      const bool separated = a.hi < b.lo || (a.hi == b.lo && !(a.hi_closed && b.lo_closed));
      if (!separated) {
        throw error(errc::malformed_set, "components " + std::to_string(i - 1) + " and " +
                                             std::to_string(i) + " overlap or are unsorted");
      }
    }
  }
  double total = 0.0;
  for (const auto& iv : parts) total += measure_interval(g, iv);
  return total;
}

/// mu_F({F = alpha}). On a flat level this is alpha - F(xi-) = jump of F at
/// xi; the three expressions are cross-checked and must agree exactly.
inline double measure_level_set(const Cdf& f, double alpha) {
  const auto d = quantile_detail(f, alpha);
  const double by_set = measure_set(f, level_set(f, alpha));
  if (!d.flat()) return by_set;
  const double by_formula = alpha - d.left_at_xi;
  if (by_formula != by_set || by_formula != f.jump(d.xi)) {
    throw std::logic_error("level-set measure identities disagree at alpha = " + format_real(alpha));
  }
  return by_formula;
}

}  // namespace dtx

#endif  // DTX_MEASURE_HPP
