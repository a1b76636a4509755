#ifndef DTX_MONOTONE_HPP
#define DTX_MONOTONE_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "dtx/error.hpp"
#include "dtx/real_set.hpp"

namespace dtx {

/// Where a real number sits relative to the breakpoints of a step-linear
/// function. `index` is the breakpoint for `at`, the left end of the segment
/// for `inside`.
struct Location {
  enum class Kind { before, at, inside, after };
  Kind kind = Kind::before;
  std::size_t index = 0;
};

/// A bounded nondecreasing right-continuous function made of atoms at
/// finitely many breakpoints x_0 < ... < x_{k-1} and linear rises between
/// consecutive breakpoints. It equals `base()` on (-inf, x_0) and `top()` on
/// [x_{k-1}, inf).
///
/// The function is stored through its levels: left(i) = G(x_i-) and
/// right(i) = G(x_i). Atom and segment masses are differences of levels, so a
/// flat segment has left(i+1) == right(i) bit for bit.
class MonotoneStepLinear {
 public:
  MonotoneStepLinear() = default;

  /// Builds G from masses. `increases[i]` is the rise on [x_i, x_{i+1}], so
  /// it has one entry fewer than `xs` (or none when `xs` is empty).
  static MonotoneStepLinear from_masses(std::vector<double> xs, const std::vector<double>& atoms,
                                        const std::vector<double>& increases, double base = 0.0) {
    if (atoms.size() != xs.size()) {
      throw error(errc::invalid_function, "one atom mass per breakpoint required");
    }
    const std::size_t want = xs.empty() ? 0 : xs.size() - 1;
    if (increases.size() != want) {
      throw error(errc::invalid_function, "expected " + std::to_string(want) +
                                              " segment increases, got " +
                                              std::to_string(increases.size()));
    }
    if (!std::isfinite(base)) throw error(errc::invalid_function, "base value must be finite");
    std::vector<double> left(xs.size()), right(xs.size());
    double level = base;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!(atoms[i] >= 0.0) || !std::isfinite(atoms[i])) {
        throw error(errc::invalid_function, "atom mass at breakpoint " + std::to_string(i) +
                                                " must be finite and non-negative");
      }
      left[i] = level;
      level += atoms[i];
      right[i] = level;
      if (i + 1 < xs.size()) {
        if (!(increases[i] >= 0.0) || !std::isfinite(increases[i])) {
          throw error(errc::invalid_function, "segment increase " + std::to_string(i) +
                                                  " must be finite and non-negative");
        }
        level += increases[i];
      }
    }
    return from_levels(std::move(xs), std::move(left), std::move(right), base);
  }

  static MonotoneStepLinear from_levels(std::vector<double> xs, std::vector<double> left,
                                        std::vector<double> right, double base) {
    if (left.size() != xs.size() || right.size() != xs.size()) {
      throw error(errc::invalid_function, "level arrays must match the breakpoints");
    }
    if (!std::isfinite(base)) throw error(errc::invalid_function, "base value must be finite");
    for (std::size_t i = 0; i < xs.size(); ++i) {
      if (!std::isfinite(xs[i]) || !std::isfinite(left[i]) || !std::isfinite(right[i])) {
        throw error(errc::invalid_function, "breakpoint " + std::to_string(i) + " is not finite");
      }
      if (i > 0 && !(xs[i - 1] < xs[i])) {
        throw error(errc::invalid_function, "breakpoints must be strictly increasing (index " +
                                                std::to_string(i) + ")");
      }
      const double prev = i == 0 ? base : right[i - 1];
      if (i == 0 ? left[0] != base : left[i] < prev) {
        throw error(errc::invalid_function, "levels decrease before breakpoint " + std::to_string(i));
      }
      if (right[i] < left[i]) {
        throw error(errc::invalid_function, "negative atom at breakpoint " + std::to_string(i));
      }
    }
    MonotoneStepLinear g;
    g.xs_ = std::move(xs);
    g.left_ = std::move(left);
    g.right_ = std::move(right);
    g.base_ = base;
    return g;
  }

  static MonotoneStepLinear constant(double c) { return from_levels({}, {}, {}, c); }

  std::size_t size() const { return xs_.size(); }
  double x(std::size_t i) const { return xs_[i]; }
  double left(std::size_t i) const { return left_[i]; }
  double right(std::size_t i) const { return right_[i]; }
  double atom(std::size_t i) const { return right_[i] - left_[i]; }
  double increase(std::size_t i) const { return left_[i + 1] - right_[i]; }
  bool flat(std::size_t i) const { return left_[i + 1] == right_[i]; }
  std::size_t segments() const { return xs_.empty() ? 0 : xs_.size() - 1; }
  const std::vector<double>& breakpoints() const { return xs_; }
  const std::vector<double>& left_levels() const { return left_; }
  const std::vector<double>& right_levels() const { return right_; }

  double base() const { return base_; }
  double top() const { return xs_.empty() ? base_ : right_.back(); }

  Location locate(double x) const {
    auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
    if (it == xs_.begin()) return {Location::Kind::before, 0};
    const auto i = static_cast<std::size_t>(it - xs_.begin()) - 1;
    if (xs_[i] == x) return {Location::Kind::at, i};
    if (i + 1 == xs_.size()) return {Location::Kind::after, i};
    return {Location::Kind::inside, i};
  }

  /// G(x), right-continuous: the atom at a breakpoint is included.
  double eval(double x) const {
    if (std::isnan(x)) return x;
    const auto loc = locate(x);
    switch (loc.kind) {
      case Location::Kind::before: return base_;
      case Location::Kind::at: return right_[loc.index];
      case Location::Kind::after: return right_.back();
      case Location::Kind::inside: return segment_value(loc.index, x);
    }
    return base_;
  }

  double operator()(double x) const { return eval(x); }

  /// G(x-).
  double eval_left(double x) const {
    if (std::isnan(x)) return x;
    const auto loc = locate(x);
    if (loc.kind == Location::Kind::at) return left_[loc.index];
    return eval(x);
  }

  /// G(x) - G(x-); nonzero only at breakpoints carrying an atom.
  double jump(double x) const {
    const auto loc = locate(x);
    return loc.kind == Location::Kind::at ? atom(loc.index) : 0.0;
  }

  /// Value on the open segment (x_i, x_{i+1}).
  double segment_value(std::size_t i, double x) const {
    const double r = right_[i];
    const double l = left_[i + 1];
    if (l == r) return r;
    const double t = (x - xs_[i]) / (xs_[i + 1] - xs_[i]);
    return std::clamp(r + (l - r) * t, r, l);
  }

  /// Least x with G(x) >= c, for base() < c <= top(). The minimum exists by
  /// right-continuity and is found by a structural scan: either a breakpoint
  /// or a point strictly inside a rising segment.
  std::pair<double, Location> first_reach(double c) const {
    auto it = std::lower_bound(right_.begin(), right_.end(), c);
    const auto i = static_cast<std::size_t>(it - right_.begin());
    if (i > 0 && left_[i] > c) {
      const std::size_t j = i - 1;
      return {solve_in_segment(j, c), {Location::Kind::inside, j}};
    }
    return {xs_[i], {Location::Kind::at, i}};
  }

  /// Least x inside (x_j, x_{j+1}) with segment_value(j, x) >= c, for
  /// right(j) < c < left(j+1). Exact for the representation: the double just
  /// below the result evaluates below c.
  double solve_in_segment(std::size_t j, double c) const {
    return least_where(j, c, [&](double x) { return segment_value(j, x) >= c; });
  }

  /// Greatest x inside (x_j, x_{j+1}) with segment_value(j, x) <= c, for
  /// right(j) < c < left(j+1).
  double last_in_segment(std::size_t j, double c) const {
    const double lo = std::nextafter(xs_[j], kInf);
    const double y = least_where(j, c, [&](double x) { return segment_value(j, x) > c; });
    if (segment_value(j, y) <= c) return y;
    return y > lo ? std::nextafter(y, -kInf) : lo;
  }

  /// {x : G(x) >= c} as a set: empty, the whole line, or [t, inf).
  RealSet superlevel_set(double c) const {
    if (c <= base_) return RealSet::everything();
    if (c > top()) return {};
    return RealSet::single(Interval::above(first_reach(c).first, true));
  }

  /// {x : G(x) <= c}: empty, the whole line, (-inf, t) or (-inf, t].
  RealSet sublevel_set(double c) const {
    if (c < base_) return {};
    if (c >= top()) return RealSet::everything();
    for (std::size_t i = 0; i < xs_.size(); ++i) {
      if (right_[i] > c) return RealSet::single(Interval::below(xs_[i], false));
      if (i + 1 < xs_.size() && left_[i + 1] > c) {
        if (right_[i] == c) return RealSet::single(Interval::below(xs_[i], true));
        return RealSet::single(Interval::below(last_in_segment(i, c), true));
      }
    }
    return RealSet::everything();
  }

  /// Distinct values in every level array, with base and top.
  std::vector<double> critical_levels() const {
    std::set<double> s{base_, top()};
    s.insert(left_.begin(), left_.end());
    s.insert(right_.begin(), right_.end());
    return {s.begin(), s.end()};
  }

 private:
  // least double in the open segment satisfying a monotone predicate, or the
  // last interior double when none does
  template <class Pred>
  double least_where(std::size_t j, double c, Pred pred) const {
    const double lo = std::nextafter(xs_[j], kInf);
    const double hi = std::nextafter(xs_[j + 1], -kInf);
    if (lo > hi) return xs_[j + 1];
    const double r = right_[j];
    const double l = left_[j + 1];
    double x = std::clamp(xs_[j] + (xs_[j + 1] - xs_[j]) * ((c - r) / (l - r)), lo, hi);
    for (int step = 0; step < 8; ++step) {
      if (pred(x)) {
        if (x == lo) return x;
        const double prev = std::nextafter(x, -kInf);
        if (!pred(prev)) return x;
        x = prev;
      } else {
        if (x == hi) return hi;
        x = std::nextafter(x, kInf);
      }
    }
    if (pred(lo)) return lo;
    if (!pred(hi)) return hi;
    double a = lo, b = hi;  // pred(a) false, pred(b) true
    for (;;) {
      const double m = a + (b - a) / 2;
      if (!(m > a && m < b)) return b;
      (pred(m) ? b : a) = m;
    }
  }

  std::vector<double> xs_;
  std::vector<double> left_;
  std::vector<double> right_;
  double base_ = 0.0;
};

/// The four equivalent characterizations of a distribution function among
/// nondecreasing maps into [0,1]:
/// (i) limits 0 and 1; (ii) {G < a} and {G >= a} nonempty for all a in (0,1);
/// (iii) {G >= a} nonempty and bounded below; (iv) inf{G >= a} is finite.
struct DfConditionReport {
  bool cond_limits = false;
  bool cond_both_nonempty = false;
  bool cond_bounded_below = false;
  bool cond_inf_finite = false;

  bool consistent() const {
    return cond_limits == cond_both_nonempty && cond_both_nonempty == cond_bounded_below &&
           cond_bounded_below == cond_inf_finite;
  }
};

namespace detail {

// Probe levels for the set conditions: every critical level, its float
// neighbours, midpoints between consecutive critical levels, a uniform grid,
// and the extreme representable levels next to 0 and 1.
inline std::vector<double> probe_levels(const MonotoneStepLinear& g, int grid = 999) {
  std::set<double> s;
  auto add = [&s](double a) {
    if (a > 0.0 && a < 1.0) s.insert(a);
  };
  const auto crit = g.critical_levels();
  for (std::size_t i = 0; i < crit.size(); ++i) {
    add(crit[i]);
    add(std::nextafter(crit[i], 0.0));
    add(std::nextafter(crit[i], 1.0));
    if (i + 1 < crit.size()) add(0.5 * (crit[i] + crit[i + 1]));
  }
  for (int k = 1; k <= grid; ++k) add(static_cast<double>(k) / (grid + 1));
  add(std::nextafter(0.0, 1.0));
  add(std::nextafter(1.0, 0.0));
  return {s.begin(), s.end()};
}

inline std::optional<double> infimum_of_superlevel(const MonotoneStepLinear& g, double a) {
  if (a <= g.base()) return std::nullopt;  // the whole line: -inf
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g.right(i) >= a) return g.x(i);
    if (i + 1 < g.size() && g.left(i + 1) > a) return g.solve_in_segment(i, a);
  }
  return std::nullopt;  // empty: +inf
}

}  // namespace detail

/// Evaluates each condition on its own. Requires the range of G in [0,1].
inline DfConditionReport df_condition_report(const MonotoneStepLinear& g) {
  if (g.base() < 0.0 || g.top() > 1.0) {
    throw error(errc::invalid_function, "df_condition_report requires a range inside [0,1]");
  }
  DfConditionReport rep;
  rep.cond_limits = g.base() == 0.0 && g.top() == 1.0;

  // G attains its infimum left of every breakpoint and its supremum from the
  // last breakpoint on, so two evaluations decide both nonemptiness claims.
  const double below = g.size() ? g.x(0) - 1.0 : 0.0;
  const double last = g.size() ? g.x(g.size() - 1) : 0.0;
  const auto probes = detail::probe_levels(g);
  rep.cond_both_nonempty = true;
  rep.cond_bounded_below = true;
  rep.cond_inf_finite = true;
  for (double a : probes) {
    if (!(g.eval(below) < a && g.eval(last) >= a)) rep.cond_both_nonempty = false;
    const RealSet up = g.superlevel_set(a);
    if (up.empty() || std::isinf(up.components().front().lo)) rep.cond_bounded_below = false;
    if (!detail::infimum_of_superlevel(g, a)) rep.cond_inf_finite = false;
  }
  return rep;
}

}  // namespace dtx

#endif  // DTX_MONOTONE_HPP
