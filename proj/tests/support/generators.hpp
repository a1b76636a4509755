#ifndef DTX_TESTS_GENERATORS_HPP
#define DTX_TESTS_GENERATORS_HPP

// Random step-linear distribution functions for property tests, each paired
// with a naive model that evaluates F by summing masses directly. The naive
// model shares no code with the library.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <random>
#include <string>
#include <vector>

#include "dtx/cdf.hpp"
#include "dtx/monotone.hpp"

namespace dtx::testing {

struct NaiveSegment {
  double a, b, mass;
};

/// F(x) = sum of atoms at points <= x + sum of segment masses times the
/// covered fraction of each segment.
struct NaiveCdf {
  std::vector<double> atom_x;
  std::vector<double> atom_m;
  std::vector<NaiveSegment> segs;
  std::vector<double> knots;  // every breakpoint, sorted

  double continuous(double x) const {
    double s = 0.0;
    for (const auto& g : segs) {
      if (x >= g.b) s += g.mass;
      else if (x > g.a) s += g.mass * (x - g.a) / (g.b - g.a);
    }
    return s;
  }
  double eval(double x) const {
    double s = continuous(x);
    for (std::size_t i = 0; i < atom_x.size(); ++i) if (atom_x[i] <= x) s += atom_m[i];
    return s;
  }
  double eval_left(double x) const {
    double s = continuous(x);
    for (std::size_t i = 0; i < atom_x.size(); ++i) if (atom_x[i] < x) s += atom_m[i];
    return s;
  }
  double jump(double x) const {
    for (std::size_t i = 0; i < atom_x.size(); ++i) if (atom_x[i] == x) return atom_m[i];
    return 0.0;
  }

  // min over candidate points of {x : F(x) >= alpha} (or > alpha when strict):
  // knots where the condition holds, and the crossing inside each segment
  double first_where(double alpha, bool strict) const {
    auto ok = [&](double v) { return strict ? v > alpha + 1e-13 : v >= alpha - 1e-13; };
    double best = std::numeric_limits<double>::infinity();
    for (double k : knots) if (ok(eval(k))) best = std::min(best, k);
    for (const auto& g : segs) {
      if (g.mass <= 0.0) continue;
      const double fa = eval(g.a);
      const double fb_left = eval_left(g.b);
      const bool starts_low = strict ? fa <= alpha + 1e-13 : fa < alpha - 1e-13;
      if (starts_low && ok(fb_left)) {
        const double t = std::max(0.0, (alpha - fa) / (fb_left - fa));
        best = std::min(best, g.a + t * (g.b - g.a));
      }
    }
    return best;
  }
  double left_quantile(double alpha) const { return first_where(alpha, false); }
  double right_quantile(double alpha) const { return first_where(alpha, true); }
};

struct RandomCdf {
  Cdf cdf;
  NaiveCdf naive;
  std::string label;
};

struct GeneratorLimits {
  std::size_t max_atoms = 10;
  std::size_t max_rising = 10;
  std::size_t max_flat = 5;
};

/// Half of the draws use dyadic masses (k / 1024) so that prefix sums are
/// exact; the rest use arbitrary real weights.
inline RandomCdf random_cdf(std::mt19937_64& rng, const GeneratorLimits& lim = {}) {
  std::uniform_int_distribution<int> coin(0, 1);
  std::uniform_int_distribution<int> gap_steps(1, 16);
  const bool dyadic = coin(rng) == 1;

  for (;;) {
    const std::size_t k = std::uniform_int_distribution<std::size_t>(1, 16)(rng);
    std::vector<double> xs(k);
    double pos = std::uniform_int_distribution<int>(-40, 8)(rng) / 8.0;
    for (auto& x : xs) {
      x = pos;
      pos += gap_steps(rng) / 8.0;
    }
    std::vector<double> w_atom(k, 0.0), w_inc(k - 1, 0.0);
    std::size_t atoms = 0, rising = 0, flat = 0;
    auto weight = [&]() {
      return dyadic ? static_cast<double>(std::uniform_int_distribution<int>(1, 8)(rng))
                    : std::uniform_real_distribution<double>(0.05, 1.0)(rng);
    };
    for (std::size_t i = 0; i < k; ++i) {
      if (atoms < lim.max_atoms && std::uniform_int_distribution<int>(0, 9)(rng) < 5) {
        w_atom[i] = weight();
        ++atoms;
      }
      if (i + 1 < k) {
        if (rising < lim.max_rising && (flat >= lim.max_flat || std::uniform_int_distribution<int>(0, 9)(rng) < 6)) {
          w_inc[i] = weight();
          ++rising;
        } else {
          ++flat;
        }
      }
    }
    if (atoms + rising == 0 || flat > lim.max_flat) continue;

    double total = 0.0;
    for (double w : w_atom) total += w;
    for (double w : w_inc) total += w;
    if (dyadic) {
      // rescale integer weights to multiples of 1/1024 that add up to 1
      std::vector<double*> all;
      for (auto& w : w_atom) if (w > 0) all.push_back(&w);
      for (auto& w : w_inc) if (w > 0) all.push_back(&w);
      int used = 0;
      for (std::size_t i = 0; i < all.size(); ++i) {
        int units = i + 1 == all.size() ? 1024 - used
                                        : std::max(1, static_cast<int>(std::floor(*all[i] / total * 1024)));
        used += units;
        *all[i] = units / 1024.0;
      }
      if (used > 1024 || *all.back() <= 0.0) continue;
    } else {
      for (auto& w : w_atom) w /= total;
      for (auto& w : w_inc) w /= total;
    }

    RandomCdf r{normalize(MonotoneStepLinear::from_masses(xs, w_atom, w_inc, 0.0)), {}, ""};
    r.naive.knots = xs;
    for (std::size_t i = 0; i < k; ++i) {
      if (w_atom[i] > 0) {
        r.naive.atom_x.push_back(xs[i]);
        r.naive.atom_m.push_back(w_atom[i]);
      }
      if (i + 1 < k && w_inc[i] > 0) r.naive.segs.push_back({xs[i], xs[i + 1], w_inc[i]});
    }
    r.label = std::string(dyadic ? "dyadic" : "real") + " k=" + std::to_string(k) +
              " atoms=" + std::to_string(atoms) + " rising=" + std::to_string(rising) +
              " flat=" + std::to_string(flat);
    return r;
  }
}

inline std::vector<RandomCdf> random_population(std::uint64_t seed, std::size_t count,
                                                const GeneratorLimits& lim = {}) {
  std::mt19937_64 rng(seed);
  std::vector<RandomCdf> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(random_cdf(rng, lim));
  return out;
}

/// A random CDF that has both atoms and rising segments.
inline RandomCdf random_mixed_cdf(std::mt19937_64& rng) {
  for (;;) {
    auto r = random_cdf(rng);
    if (!r.naive.atom_x.empty() && !r.naive.segs.empty()) return r;
  }
}

inline Cdf bernoulli_half() {
  return normalize(MonotoneStepLinear::from_masses({0.0, 1.0}, {0.5, 0.5}, {0.0}, 0.0));
}

// ramp on [0, 0.25], flat on [0.25, 0.5), atom 0.25 at 0.5, ramp on [0.5, 1]
inline Cdf mixed_example() {
  return normalize(MonotoneStepLinear::from_masses({0.0, 0.25, 0.5, 1.0}, {0.0, 0.0, 0.25, 0.0},
                                                   {0.25, 0.0, 0.5}, 0.0));
}

inline Cdf uniform01() {
  return normalize(MonotoneStepLinear::from_masses({0.0, 1.0}, {0.0, 0.0}, {1.0}, 0.0));
}

inline Cdf point_mass(double x) {
  return normalize(MonotoneStepLinear::from_masses({x}, {1.0}, {}, 0.0));
}

}  // namespace dtx::testing

#endif  // DTX_TESTS_GENERATORS_HPP
