#ifndef DTX_CDF_HPP
#define DTX_CDF_HPP

#include <cstddef>
#include <utility>
#include <vector>

#include "dtx/error.hpp"
#include "dtx/monotone.hpp"
#include "dtx/real_set.hpp"

namespace dtx {

/// A distribution function: a step-linear function with limits exactly 0 and
/// exactly 1. Immutable once built.
class Cdf {
 public:
  static Cdf from(MonotoneStepLinear body) {
    if (body.base() != 0.0 || body.top() != 1.0) {
      throw error(errc::invalid_function,
                  "a distribution function needs base 0 and top 1, got base " +
                      format_real(body.base()) + " and top " + format_real(body.top()));
    }
    Cdf f;
    f.body_ = std::move(body);
    for (std::size_t i = 0; i < f.body_.size(); ++i) {
      if (f.body_.atom(i) > 0.0) f.jumps_.push_back(f.body_.x(i));
      if (i + 1 < f.body_.size() && f.body_.flat(i)) {
        const double level = f.body_.right(i);
        if (level > 0.0 && level < 1.0 && (f.plateaus_.empty() || f.plateaus_.back() != level)) {
          f.plateaus_.push_back(level);
        }
      }
    }
    return f;
  }

  const MonotoneStepLinear& body() const { return body_; }
  double base() const { return 0.0; }
  double top() const { return 1.0; }

  double eval(double x) const { return body_.eval(x); }
  double operator()(double x) const { return body_.eval(x); }
  double eval_left(double x) const { return body_.eval_left(x); }
  double jump(double x) const { return body_.jump(x); }

  /// Ascending points carrying an atom.
  const std::vector<double>& jump_points() const { return jumps_; }
  /// Ascending levels in (0,1) at which F has a flat piece of positive length.
  const std::vector<double>& plateau_levels() const { return plateaus_; }

 private:
  MonotoneStepLinear body_;
  std::vector<double> jumps_;
  std::vector<double> plateaus_;
};

/// Affine rescaling (G - c_lo) / (c_hi - c_lo) of a bounded nondecreasing
/// function onto a distribution function. Breakpoints are kept; the limits
/// become exactly 0 and 1.
inline Cdf normalize(const MonotoneStepLinear& g) {
  const double lo = g.base();
  const double hi = g.top();
  if (!(hi > lo)) {
    throw error(errc::degenerate_range, "function is constant (" + format_real(lo) + ")");
  }
  const double span = hi - lo;
  std::vector<double> left(g.size()), right(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    left[i] = (g.left(i) - lo) / span;
    right[i] = (g.right(i) - lo) / span;
  }
  return Cdf::from(MonotoneStepLinear::from_levels(g.breakpoints(), std::move(left),
                                                   std::move(right), 0.0));
}

/// The left and right alpha-quantiles.
struct QuantilePair {
  double xi = 0.0;
  double eta = 0.0;
};

/// Everything the structural quantile scan learns about a level alpha.
/// Values at xi and eta are read from the representation, not re-evaluated:
/// when xi lies inside a rising segment, F(xi-) = F(xi) = alpha exactly.
struct QuantileDetail {
  double alpha = 0.0;
  double xi = 0.0;
  double eta = 0.0;
  double left_at_xi = 0.0;   // q = F(xi-)
  double value_at_xi = 0.0;  // F(xi)
  double left_at_eta = 0.0;  // F(eta-)
  double value_at_eta = 0.0; // F(eta)

  double beta() const { return value_at_xi - left_at_xi; }
  bool flat() const { return xi < eta; }
};

inline QuantileDetail quantile_detail(const Cdf& f, double alpha) {
  detail::require_alpha(alpha);
  const auto& g = f.body();
  QuantileDetail d;
  d.alpha = alpha;
  const auto [xi, loc] = g.first_reach(alpha);
  d.xi = xi;
  if (loc.kind == Location::Kind::inside) {
    d.left_at_xi = d.value_at_xi = alpha;
    d.eta = xi;
    d.left_at_eta = d.value_at_eta = alpha;
    return d;
  }
  const std::size_t i = loc.index;
  d.left_at_xi = g.left(i);
  d.value_at_xi = g.right(i);
  std::size_t j = i;
  if (d.value_at_xi == alpha) {
    // walk the flat run starting at xi until the function rises or jumps
    while (j + 1 < g.size() && g.flat(j)) {
      ++j;
      if (g.right(j) > alpha) break;
    }
  }
  d.eta = g.x(j);
  d.left_at_eta = g.left(j);
  d.value_at_eta = g.right(j);
  return d;
}

/// F^(alpha) = min{x : F(x) >= alpha}.
inline double left_quantile(const Cdf& f, double alpha) { return quantile_detail(f, alpha).xi; }

/// F^v(alpha) = inf{x : F(x) > alpha} = sup{x : F(x) <= alpha}.
inline double right_quantile(const Cdf& f, double alpha) { return quantile_detail(f, alpha).eta; }

inline QuantilePair quantiles(const Cdf& f, double alpha) {
  const auto d = quantile_detail(f, alpha);
  return {d.xi, d.eta};
}

/// Shape of {x : F(x) = alpha}; exactly four cases can occur.
enum class LevelSetKind { empty, singleton, half_open, closed };

inline const char* to_string(LevelSetKind k) {
  switch (k) {
    case LevelSetKind::empty: return "empty";
    case LevelSetKind::singleton: return "singleton";
    case LevelSetKind::half_open: return "half-open";
    case LevelSetKind::closed: return "closed";
  }
  return "?";
}

inline LevelSetKind level_set_kind(const QuantileDetail& d) {
  if (d.flat()) return d.value_at_eta > d.alpha ? LevelSetKind::half_open : LevelSetKind::closed;
  return d.value_at_xi > d.alpha ? LevelSetKind::empty : LevelSetKind::singleton;
}

/// {x : F(x) = alpha}.
inline RealSet level_set(const Cdf& f, double alpha) {
  const auto d = quantile_detail(f, alpha);
  switch (level_set_kind(d)) {
    case LevelSetKind::empty: return {};
    case LevelSetKind::singleton: return RealSet::single(Interval::point(d.xi));
    case LevelSetKind::half_open: return RealSet::single(Interval::right_open(d.xi, d.eta));
    case LevelSetKind::closed: return RealSet::single(Interval::closed(d.xi, d.eta));
  }
  return {};
}

/// {x : F_lambda(x) <= alpha} split at xi = F^(alpha) into the part right of
/// xi, the point xi itself, and the part left of xi.
struct ADecomposition {
  RealSet plus;
  RealSet tilde;
  RealSet minus;

  RealSet all() const { return plus.unite(tilde).unite(minus); }
};

inline ADecomposition a_decomposition(const Cdf& f, double lambda, double alpha) {
  detail::require_lambda_half_open(lambda);
  const auto d = quantile_detail(f, alpha);
  ADecomposition a;
  if (d.flat()) {
    a.plus = RealSet::single(d.value_at_eta > alpha ? Interval::open(d.xi, d.eta)
                                                    : Interval::left_open(d.xi, d.eta));
  }
  const double q = d.left_at_xi;
  if (d.beta() * lambda <= alpha - q) a.tilde = RealSet::single(Interval::point(d.xi));
  a.minus = RealSet::single(Interval::below(d.xi, false));
  return a;
}

struct Jump {
  double x = 0.0;
  double mass = 0.0;
  friend bool operator==(const Jump&, const Jump&) = default;
};

/// Atoms of F in ascending order.
inline std::vector<Jump> jump_set(const Cdf& f) {
  std::vector<Jump> out;
  for (double x : f.jump_points()) out.push_back({x, f.jump(x)});
  return out;
}

/// Checks that every atom x is recovered as F^(u) = x = F^v(u) for u strictly
/// inside its jump interval (F(x-), F(x)).
inline bool jumps_match_quantiles(const Cdf& f) {
  for (const auto& j : jump_set(f)) {
    const double u = 0.5 * (f.eval_left(j.x) + f.eval(j.x));
    if (!(u > f.eval_left(j.x) && u < f.eval(j.x))) continue;  // jump below float resolution
    const auto d = quantile_detail(f, u);
    if (!(d.xi == j.x && d.eta == j.x && d.beta() > 0.0)) return false;
  }
  return true;
}

}  // namespace dtx

#endif  // DTX_CDF_HPP
