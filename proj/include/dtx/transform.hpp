#ifndef DTX_TRANSFORM_HPP
#define DTX_TRANSFORM_HPP

#include <algorithm>
#include <cstddef>
#include <span>
#include <vector>

#include "dtx/cdf.hpp"
#include "dtx/error.hpp"
#include "dtx/measure.hpp"
#include "dtx/real_set.hpp"

namespace dtx {

/// Interpolation weight of the distributional transform, lambda in [0,1].
class TransformParam {
 public:
  explicit TransformParam(double lambda) : lambda_(lambda) {
    if (!(lambda >= 0.0 && lambda <= 1.0)) {
      throw error(errc::lambda_out_of_range, "lambda must lie in [0,1], got " + format_real(lambda));
    }
  }
  double value() const { return lambda_; }

 private:
  double lambda_;
};

namespace detail {

// F(x-) + lambda * (F(x) - F(x-)), with the endpoints of lambda hitting the
// one-sided values exactly and the result never leaving [F(x-), F(x)].
inline double interpolate_jump(double left, double right, double lambda) {
  if (lambda == 0.0) return left;
  if (lambda == 1.0) return right;
  return std::min(left + lambda * (right - left), right);
}

}  // namespace detail

/// F_lambda(x) = F(x-) + lambda * dF(x) = (1 - lambda) F(x-) + lambda F(x).
inline double transform(const Cdf& f, double x, TransformParam lambda) {
  return detail::interpolate_jump(f.eval_left(x), f.eval(x), lambda.value());
}

inline double transform(const Cdf& f, double x, double lambda) {
  return transform(f, x, TransformParam(lambda));
}

/// {alpha in (0,1) : F^(alpha) = x}. It always sits between (F(x-), F(x))
/// and [F(x-), F(x)]; the lower end belongs to it exactly when F does not
/// reach F(x-) anywhere left of x.
inline RealSet quantile_range_of_point(const Cdf& f, double x) {
  const auto& g = f.body();
  const auto loc = g.locate(x);
  double lo = 0.0, hi = 0.0;
  bool flat_on_left = true;
  switch (loc.kind) {
    case Location::Kind::before:
      lo = hi = 0.0;
      break;
    case Location::Kind::after:
      lo = hi = 1.0;
      break;
    case Location::Kind::at:
      lo = g.left(loc.index);
      hi = g.right(loc.index);
      flat_on_left = loc.index == 0 || g.flat(loc.index - 1);
      break;
    case Location::Kind::inside:
      lo = hi = g.segment_value(loc.index, x);
      flat_on_left = g.flat(loc.index);
      break;
  }
  const Interval candidates{lo, hi, !flat_on_left, true};
  return RealSet::single(candidates).intersect(RealSet::single(Interval::open(0.0, 1.0)));
}

/// F(R) union F^-(R): every value F or its left limit takes. Its complement
/// in (0,1) is the disjoint union of the open jump intervals.
inline RealSet range_set(const Cdf& f) {
  const auto& g = f.body();
  std::vector<Interval> parts{Interval::point(0.0), Interval::point(1.0)};
  for (std::size_t i = 0; i < g.size(); ++i) {
    parts.push_back(Interval::point(g.left(i)));
    parts.push_back(Interval::point(g.right(i)));
    if (i + 1 < g.size()) parts.push_back(Interval::closed(g.right(i), g.left(i + 1)));
  }
  return RealSet(std::move(parts));
}

/// Maps one lambda per atom (ascending order) to F_{lambda_n}(x_n).
inline std::vector<double> phi(const Cdf& f, std::span<const double> lambdas) {
  const auto& jumps = f.jump_points();
  if (lambdas.size() != jumps.size()) {
    throw error(errc::length_mismatch, "expected " + std::to_string(jumps.size()) +
                                           " lambdas, got " + std::to_string(lambdas.size()));
  }
  std::vector<double> out(lambdas.size());
  for (std::size_t n = 0; n < lambdas.size(); ++n) {
    if (!(lambdas[n] > 0.0 && lambdas[n] < 1.0)) {
      throw error(errc::lambda_out_of_range,
                  "lambda " + std::to_string(n) + " must lie in (0,1)", n);
    }
    out[n] = transform(f, jumps[n], lambdas[n]);
  }
  return out;
}

/// Inverse of phi: lambda_n = (alpha_n - F(F^(alpha_n)-)) / dF(F^(alpha_n)).
inline std::vector<double> phi_inverse(const Cdf& f, std::span<const double> alphas) {
  const auto& jumps = f.jump_points();
  if (alphas.size() != jumps.size()) {
    throw error(errc::length_mismatch, "expected " + std::to_string(jumps.size()) +
                                           " levels, got " + std::to_string(alphas.size()));
  }
  std::vector<double> out(alphas.size());
  for (std::size_t n = 0; n < alphas.size(); ++n) {
    const double a = alphas[n];
    if (!(a > f.eval_left(jumps[n]) && a < f.eval(jumps[n]))) {
      throw error(errc::alpha_not_in_jump_interval,
                  "level " + std::to_string(n) + " = " + format_real(a) +
                      " is outside the open jump interval at x = " + format_real(jumps[n]),
                  n);
    }
    const auto d = quantile_detail(f, a);
    out[n] = (a - d.left_at_xi) / d.beta();
  }
  return out;
}

/// The exceptional set outside which F^ inverts F_lambda, in three pieces.
struct NullSetReport {
  double lambda = 1.0;
  RealSet zero_set;       // {F_lambda = 0}
  RealSet one_set;        // {F_lambda = 1}
  RealSet plateau_union;  // union of A+_{lambda,alpha} over flat levels alpha
  double total_measure = 0.0;
  double hypothesis_measure = 0.0;  // mu_F({F_lambda in {0,1}})

  RealSet all() const { return zero_set.unite(one_set).unite(plateau_union); }
  /// 0 < F_lambda < 1 holds mu_F-almost everywhere.
  bool hypothesis_holds() const { return hypothesis_measure == 0.0; }
};

inline NullSetReport null_set(const Cdf& f, double lambda) {
  detail::require_lambda_half_open(lambda);
  const auto& g = f.body();
  NullSetReport r;
  r.lambda = lambda;
  // lambda > 0: F_lambda(x) = 0 iff F(x) = 0
  r.zero_set = g.sublevel_set(0.0);
  const double t1 = g.first_reach(1.0).first;
  if (lambda == 1.0) {
    r.one_set = RealSet::single(Interval::above(t1, true));
  } else {
    // lambda < 1: F_lambda(x) = 1 iff F(x-) = 1
    r.one_set = RealSet::single(Interval::above(t1, f.eval_left(t1) == 1.0));
  }
  for (double level : f.plateau_levels()) {
    r.plateau_union = r.plateau_union.unite(a_decomposition(f, lambda, level).plus);
  }
  r.hypothesis_measure = measure_set(f, r.zero_set.unite(r.one_set));
  r.total_measure = measure_set(f, r.all());
  return r;
}

/// F^(F_lambda(x)); never exceeds x and equals x off the null set.
inline double invert_transform(const Cdf& f, double x, double lambda) {
  detail::require_lambda_half_open(lambda);
  const double a = transform(f, x, lambda);
  if (!(a > 0.0 && a < 1.0)) {
    throw error(errc::transform_out_of_range,
                "F_lambda(" + format_real(x) + ") = " + format_real(a) + " is not inside (0,1)");
  }
  return left_quantile(f, a);
}

}  // namespace dtx

#endif  // DTX_TRANSFORM_HPP
