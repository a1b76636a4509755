#ifndef DTX_STOCHASTIC_HPP
#define DTX_STOCHASTIC_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <random>
#include <span>
#include <string>
#include <vector>

#include "dtx/cdf.hpp"
#include "dtx/error.hpp"
#include "dtx/measure.hpp"
#include "dtx/transform.hpp"

namespace dtx {

/// Identifies a reproducible stream of uniform variates. Equal descriptors
/// give equal sequences; streams with different ids are treated as
/// independent.
struct SeededStream {
  std::uint64_t seed = 42;
  std::uint64_t stream_id = 0;

  SeededStream next_stream(std::uint64_t offset = 1) const { return {seed, stream_id + offset}; }
  std::string to_string() const {
    return "seed=" + std::to_string(seed) + ",stream=" + std::to_string(stream_id);
  }
  friend bool operator==(const SeededStream&, const SeededStream&) = default;
};

/// Uniform variates on the open interval (0,1). The engine and the mapping
/// from 64-bit words to doubles are both fully specified, so sequences are
/// identical across platforms and standard libraries.
class UniformSource {
 public:
  explicit UniformSource(const SeededStream& s) {
    std::seed_seq seq{static_cast<std::uint32_t>(s.seed), static_cast<std::uint32_t>(s.seed >> 32),
                      static_cast<std::uint32_t>(s.stream_id),
                      static_cast<std::uint32_t>(s.stream_id >> 32)};
    engine_.seed(seq);
  }

  double operator()() {
    for (;;) {
      const double u = static_cast<double>(engine_() >> 11) * 0x1.0p-53;
      if (u > 0.0) return u;  // 0 is redrawn; 1 cannot occur
    }
  }

 private:
  std::mt19937_64 engine_;
};

/// Quantile sampling: x_i = F^(u_i) with u_i uniform on (0,1).
inline std::vector<double> sample_inverse(const Cdf& f, const SeededStream& stream, std::size_t n) {
  UniformSource u(stream);
  std::vector<double> xs(n);
  for (auto& x : xs) x = left_quantile(f, u());
  return xs;
}

/// u_i = F(x_i-) + v_i dF(x_i) with v_i drawn from `v_stream`, which must be
/// a different stream from the one that produced the x_i.
inline std::vector<double> distributional_transform(const Cdf& f, std::span<const double> xs,
                                                    const SeededStream& xs_source,
                                                    const SeededStream& v_stream) {
  if (xs_source.stream_id == v_stream.stream_id) {
    throw error(errc::stream_collision, "the transform stream (" + v_stream.to_string() +
                                            ") coincides with the sample stream");
  }
  UniformSource v(v_stream);
  std::vector<double> us(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) us[i] = transform(f, xs[i], v());
  return us;
}

/// Exact evaluation of P(F_V(X) <= alpha) - alpha as the sum of three terms
/// (flat piece right of xi, atom at xi, mass up to xi) for X ~ law_of_x
/// and V uniform and independent of X.
struct TransformCdfBreakdown {
  double alpha = 0.0;
  double xi = 0.0;
  double beta = 0.0;     // dF(xi)
  double q = 0.0;        // F(xi-)
  double c_beta = 0.0;   // 0 if beta = 0, else (alpha - F(xi)) / beta
  double term_flat = 0.0;  // P(X > xi, F(X) = alpha)
  double term_atom = 0.0;  // c_beta (P(X = xi) - beta)
  double term_left = 0.0;  // P(X <= xi) - F(xi)
  double total = 0.0;      // P(F_V(X) <= alpha)
};

inline TransformCdfBreakdown transform_cdf_exact(const Cdf& f, const Cdf& law_of_x, double alpha) {
  const auto d = quantile_detail(f, alpha);
  TransformCdfBreakdown b;
  b.alpha = alpha;
  b.xi = d.xi;
  b.beta = d.beta();
  b.q = d.left_at_xi;
  b.c_beta = b.beta == 0.0 ? 0.0 : (alpha - d.value_at_xi) / b.beta;
  const RealSet right_of_xi = RealSet::single(Interval::above(d.xi, false));
  b.term_flat = measure_set(law_of_x, level_set(f, alpha).intersect(right_of_xi));
  b.term_atom = b.c_beta * (law_of_x.jump(d.xi) - b.beta);
  b.term_left = law_of_x.eval(d.xi) - d.value_at_xi;
  b.total = alpha + b.term_flat + b.term_atom + b.term_left;
  return b;
}

/// Monte Carlo estimate of P(F_V(X) <= alpha) with X ~ law_of_x drawn from
/// `stream` and V from the next stream id.
inline double estimate_transform_cdf(const Cdf& f, const Cdf& law_of_x, double alpha,
                                     const SeededStream& stream, std::size_t n) {
  const auto xs = sample_inverse(law_of_x, stream, n);
  const auto us = distributional_transform(f, xs, stream, stream.next_stream());
  const auto hits = std::count_if(us.begin(), us.end(), [alpha](double u) { return u <= alpha; });
  return static_cast<double>(hits) / static_cast<double>(n);
}

/// Two-sided Kolmogorov-Smirnov distance of a sample from U(0,1).
inline double ks_uniformity(std::span<const double> us) {
  if (us.empty()) throw error(errc::empty_sample, "KS statistic of an empty sample");
  std::vector<double> sorted(us.begin(), us.end());
  for (double u : sorted) {
    if (!(u >= 0.0 && u <= 1.0)) {
      throw std::invalid_argument("KS uniformity sample value outside [0,1]: " + format_real(u));
    }
  }
  std::sort(sorted.begin(), sorted.end());
  const auto n = static_cast<double>(sorted.size());
  double d = 0.0;
  for (std::size_t i = 0; i < sorted.size(); ++i) {
    const auto k = static_cast<double>(i);
    d = std::max({d, (k + 1.0) / n - sorted[i], sorted[i] - k / n});
  }
  return d;
}

/// Asymptotic 1% critical value of the KS statistic.
inline double ks_critical_1pct(std::size_t n) { return 1.6276 / std::sqrt(static_cast<double>(n)); }

/// mu_F({x : F(x) = level}), the mass the law of F(X) puts on `level` when
/// X ~ F. Positive at the top of every atom, which is why F(X) itself is not
/// uniform once F jumps.
inline double image_atom(const Cdf& f, double level) {
  if (!(level > 0.0 && level <= 1.0)) {
    throw error(errc::alpha_out_of_range, "level must lie in (0,1], got " + format_real(level));
  }
  if (level == 1.0) return measure_set(f, f.body().superlevel_set(1.0));
  return measure_set(f, level_set(f, level));
}

struct InversionResult {
  std::size_t n = 0;
  std::size_t failures = 0;  // F^(F_V(X)) != X
  bool shortcut_applicable = false;  // P(0 < F(X) < 1) = 1
  std::size_t shortcut_failures = 0; // F^(F(X)) != X
  SeededStream x_stream;
  SeededStream v_stream;
};

namespace detail {

inline bool same_point(const Cdf& f, double recovered, double x) {
  if (f.jump(x) > 0.0) return recovered == x;
  return std::abs(recovered - x) <= 1e-9;
}

}  // namespace detail

/// Draws X ~ F from `stream` and V from the next stream id and counts the
/// draws where F^(F_V(X)) fails to give back X.
inline InversionResult inversion_check(const Cdf& f, const SeededStream& stream, std::size_t n) {
  InversionResult r;
  r.n = n;
  r.x_stream = stream;
  r.v_stream = stream.next_stream();
  r.shortcut_applicable = null_set(f, 1.0).hypothesis_measure == 0.0;
  const auto xs = sample_inverse(f, r.x_stream, n);
  UniformSource v(r.v_stream);
  for (double x : xs) {
    const double a = transform(f, x, v());
    if (!(a > 0.0 && a < 1.0) || !detail::same_point(f, left_quantile(f, a), x)) ++r.failures;
    if (r.shortcut_applicable) {
      const double b = f.eval(x);
      if (!(b > 0.0 && b < 1.0) || !detail::same_point(f, left_quantile(f, b), x)) {
        ++r.shortcut_failures;
      }
    }
  }
  return r;
}

/// Sample correlation of U = F_V(X) and Y = F(X-). Reported only; whether
/// the two are independent is left open.
inline double transform_left_correlation(const Cdf& f, const SeededStream& stream, std::size_t n) {
  const auto xs = sample_inverse(f, stream, n);
  UniformSource v(stream.next_stream());
  double su = 0, sy = 0, suu = 0, syy = 0, suy = 0;
  for (double x : xs) {
    const double u = transform(f, x, v());
    const double y = f.eval_left(x);
    su += u;
    sy += y;
    suu += u * u;
    syy += y * y;
    suy += u * y;
  }
  const auto m = static_cast<double>(n);
  const double cov = suy / m - (su / m) * (sy / m);
  const double vu = suu / m - (su / m) * (su / m);
  const double vy = syy / m - (sy / m) * (sy / m);
  if (vu <= 0.0 || vy <= 0.0) return 0.0;
  return cov / std::sqrt(vu * vy);
}

}  // namespace dtx

#endif  // DTX_STOCHASTIC_HPP
