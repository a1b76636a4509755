#ifndef DTX_COPULA_HPP
#define DTX_COPULA_HPP

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <numeric>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "dtx/cdf.hpp"
#include "dtx/error.hpp"
#include "dtx/stochastic.hpp"
#include "dtx/transform.hpp"

namespace dtx {

enum class CopulaKind { independence, comonotone, countermonotone, empirical };

inline const char* to_string(CopulaKind k) {
  switch (k) {
    case CopulaKind::independence: return "independence";
    case CopulaKind::comonotone: return "comonotone";
    case CopulaKind::countermonotone: return "countermonotone";
    case CopulaKind::empirical: return "empirical";
  }
  return "?";
}

/// A copula: one of three closed forms, or the empirical copula of an N x n
/// matrix of transformed samples, C(g) = #{rows r : u_rj <= g_j for all j} / N.
/// Analytic kinds built with dimension 0 accept any dimension.
class CopulaSpec {
 public:
  static CopulaSpec independence(std::size_t dim = 0) { return {CopulaKind::independence, dim}; }
  static CopulaSpec comonotone(std::size_t dim = 0) { return {CopulaKind::comonotone, dim}; }
  static CopulaSpec countermonotone() { return {CopulaKind::countermonotone, 2}; }

  static CopulaSpec empirical(std::vector<double> rows_major, std::size_t dim) {
    if (dim == 0 || rows_major.empty() || rows_major.size() % dim != 0) {
      throw error(errc::dimension_mismatch, "empirical copula needs a non-empty N x n matrix");
    }
    CopulaSpec c{CopulaKind::empirical, dim};
    c.u_ = std::move(rows_major);
    return c;
  }

  CopulaKind kind() const { return kind_; }
  std::size_t dimension() const { return dim_; }
  std::size_t rows() const { return kind_ == CopulaKind::empirical ? u_.size() / dim_ : 0; }
  double u(std::size_t row, std::size_t col) const { return u_[row * dim_ + col]; }

  std::vector<double> column(std::size_t col) const {
    std::vector<double> out(rows());
    for (std::size_t r = 0; r < out.size(); ++r) out[r] = u(r, col);
    return out;
  }

 private:
  CopulaSpec(CopulaKind k, std::size_t dim) : kind_(k), dim_(dim) {}

  CopulaKind kind_;
  std::size_t dim_;
  std::vector<double> u_;
};

inline double copula_eval(const CopulaSpec& c, std::span<const double> gamma) {
  if (c.kind() == CopulaKind::countermonotone && gamma.size() != 2) {
    throw error(errc::countermonotone_dimension,
                "the countermonotone copula exists only in dimension 2, got " +
                    std::to_string(gamma.size()));
  }
  if (c.dimension() != 0 && gamma.size() != c.dimension()) {
    throw error(errc::dimension_mismatch, "copula of dimension " + std::to_string(c.dimension()) +
                                              " evaluated at a point of dimension " +
                                              std::to_string(gamma.size()));
  }
  if (gamma.empty()) throw error(errc::dimension_mismatch, "empty argument");
  switch (c.kind()) {
    case CopulaKind::independence:
      return std::accumulate(gamma.begin(), gamma.end(), 1.0, std::multiplies<>());
    case CopulaKind::comonotone:
      return *std::min_element(gamma.begin(), gamma.end());
    case CopulaKind::countermonotone:
      return std::max(gamma[0] + gamma[1] - 1.0, 0.0);
    case CopulaKind::empirical: {
      std::size_t hits = 0;
      const std::size_t n = c.dimension();
      for (std::size_t r = 0; r < c.rows(); ++r) {
        bool inside = true;
        for (std::size_t j = 0; j < n && inside; ++j) inside = c.u(r, j) <= gamma[j];
        hits += inside;
      }
      return static_cast<double>(hits) / static_cast<double>(c.rows());
    }
  }
  return 0.0;
}

/// C(H_1(x_1), ..., H_n(x_n)): a joint distribution function with marginals H_j.
inline double sklar_compose(const CopulaSpec& c, std::span<const Cdf> marginals,
                            std::span<const double> x) {
  if (marginals.size() != x.size()) {
    throw error(errc::dimension_mismatch, std::to_string(marginals.size()) + " marginals but " +
                                              std::to_string(x.size()) + " coordinates");
  }
  std::vector<double> gamma(x.size());
  for (std::size_t j = 0; j < x.size(); ++j) gamma[j] = marginals[j].eval(x[j]);
  return copula_eval(c, gamma);
}

/// C-volume of the box [a, b]; non-negative for every copula.
inline double rectangle_volume(const CopulaSpec& c, std::span<const double> a,
                               std::span<const double> b) {
  if (a.size() != b.size()) throw error(errc::dimension_mismatch, "box corners differ in dimension");
  const std::size_t n = a.size();
  double vol = 0.0;
  std::vector<double> v(n);
  for (std::size_t mask = 0; mask < (std::size_t{1} << n); ++mask) {
    int lower = 0;
    for (std::size_t j = 0; j < n; ++j) {
      const bool lo = (mask >> j) & 1U;
      v[j] = lo ? a[j] : b[j];
      lower += lo;
    }
    vol += (lower % 2 ? -1.0 : 1.0) * copula_eval(c, v);
  }
  return vol;
}

enum class Dependence { independent, comonotone, countermonotone };

inline const char* to_string(Dependence d) {
  switch (d) {
    case Dependence::independent: return "independent";
    case Dependence::comonotone: return "comonotone";
    case Dependence::countermonotone: return "countermonotone";
  }
  return "?";
}

/// N draws of (X_1, ..., X_n) with the given marginals, stored row-major.
struct JointSample {
  std::size_t dim = 0;
  std::vector<double> rows;  // N x dim
  std::vector<Cdf> marginals;
  std::vector<SeededStream> provenance;  // one per coordinate

  std::size_t size() const { return dim ? rows.size() / dim : 0; }
  double at(std::size_t r, std::size_t j) const { return rows[r * dim + j]; }
};

/// Independent coordinates use streams {seed, j}; the comonotone and
/// countermonotone samples drive every coordinate from {seed, 0}, the latter
/// through u and 1 - u.
inline JointSample generate_joint_sample(std::vector<Cdf> marginals, Dependence dep, std::size_t n,
                                         std::uint64_t seed) {
  const std::size_t dim = marginals.size();
  if (dim == 0) throw error(errc::dimension_mismatch, "at least one marginal required");
  if (dep == Dependence::countermonotone && dim != 2) {
    throw error(errc::countermonotone_dimension,
                "countermonotone dependence needs exactly 2 marginals, got " + std::to_string(dim));
  }
  JointSample s;
  s.dim = dim;
  s.rows.resize(n * dim);
  if (dep == Dependence::independent) {
    for (std::size_t j = 0; j < dim; ++j) {
      const SeededStream st{seed, j};
      s.provenance.push_back(st);
      const auto col = sample_inverse(marginals[j], st, n);
      for (std::size_t r = 0; r < n; ++r) s.rows[r * dim + j] = col[r];
    }
  } else {
    const SeededStream st{seed, 0};
    s.provenance.assign(dim, st);
    UniformSource u(st);
    for (std::size_t r = 0; r < n; ++r) {
      const double w = u();
      for (std::size_t j = 0; j < dim; ++j) {
        const double level = (dep == Dependence::countermonotone && j == 1) ? 1.0 - w : w;
        s.rows[r * dim + j] = left_quantile(marginals[j], level);
      }
    }
  }
  s.marginals = std::move(marginals);
  return s;
}

/// Empirical joint distribution function of the sample at x.
inline double empirical_joint_cdf(const JointSample& s, std::span<const double> x) {
  if (x.size() != s.dim) {
    throw error(errc::dimension_mismatch, "point of dimension " + std::to_string(x.size()) +
                                              " for a sample of dimension " + std::to_string(s.dim));
  }
  std::size_t hits = 0;
  for (std::size_t r = 0; r < s.size(); ++r) {
    bool inside = true;
    for (std::size_t j = 0; j < s.dim && inside; ++j) inside = s.at(r, j) <= x[j];
    hits += inside;
  }
  return static_cast<double>(hits) / static_cast<double>(s.size());
}

/// Empirical copula of U_j = F_j(X_j-) + V_j dF_j(X_j). Coordinate j draws
/// its V from stream id v_stream.stream_id + j; none of those ids may be
/// used by the sample itself.
inline CopulaSpec dt_copula(const JointSample& s, const SeededStream& v_stream) {
  for (std::size_t j = 0; j < s.dim; ++j) {
    const auto vs = v_stream.next_stream(j);
    for (const auto& p : s.provenance) {
      if (p.stream_id == vs.stream_id) {
        throw error(errc::stream_collision, "transform stream " + vs.to_string() +
                                                " collides with sample stream " + p.to_string());
      }
    }
  }
  const std::size_t n = s.size();
  std::vector<double> u(s.rows.size());
  for (std::size_t j = 0; j < s.dim; ++j) {
    UniformSource v(v_stream.next_stream(j));
    for (std::size_t r = 0; r < n; ++r) {
      u[r * s.dim + j] = transform(s.marginals[j], s.at(r, j), v());
    }
  }
  return CopulaSpec::empirical(std::move(u), s.dim);
}

/// Cartesian product of per-coordinate value lists.
inline std::vector<std::vector<double>> product_grid(const std::vector<std::vector<double>>& axes) {
  std::vector<std::vector<double>> out{{}};
  for (const auto& axis : axes) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : out) {
      for (double v : axis) {
        auto p = prefix;
        p.push_back(v);
        next.push_back(std::move(p));
      }
    }
    out = std::move(next);
  }
  return out;
}

/// max over the grid of |empirical joint CDF(x) - C_hat(F_1(x_1), ..., F_n(x_n))|.
inline double sklar_identity_check(const JointSample& s, const CopulaSpec& c_hat,
                                   const std::vector<std::vector<double>>& grid) {
  double worst = 0.0;
  std::vector<double> gamma(s.dim);
  for (const auto& x : grid) {
    if (x.size() != s.dim) {
      throw error(errc::dimension_mismatch, "grid point of dimension " + std::to_string(x.size()));
    }
    for (std::size_t j = 0; j < s.dim; ++j) gamma[j] = s.marginals[j].eval(x[j]);
    worst = std::max(worst, std::abs(empirical_joint_cdf(s, x) - copula_eval(c_hat, gamma)));
  }
  return worst;
}

/// At levels where every marginal is flat, C(alpha) equals the joint CDF at
/// the left quantiles. Returns (C_hat(alpha), joint CDF at (F_j^(alpha_j))).
inline std::pair<double, double> copula_at_flat_alpha(const JointSample& s, const CopulaSpec& c_hat,
                                                      std::span<const double> alphas) {
  if (alphas.size() != s.dim) {
    throw error(errc::dimension_mismatch, "expected " + std::to_string(s.dim) + " levels");
  }
  std::vector<double> xi(s.dim);
  for (std::size_t j = 0; j < s.dim; ++j) {
    const auto d = quantile_detail(s.marginals[j], alphas[j]);
    if (!d.flat()) {
      throw error(errc::not_a_flat_level,
                  "coordinate " + std::to_string(j) + ": level " + format_real(alphas[j]) +
                      " has equal left and right quantiles",
                  j);
    }
    xi[j] = d.xi;
  }
  return {copula_eval(c_hat, alphas), empirical_joint_cdf(s, xi)};
}

}  // namespace dtx

#endif  // DTX_COPULA_HPP
