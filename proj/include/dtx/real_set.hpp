#ifndef DTX_REAL_SET_HPP
#define DTX_REAL_SET_HPP

#include <algorithm>
#include <charconv>
#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "dtx/error.hpp"

namespace dtx {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Shortest round-trip decimal form of a double; "inf"/"-inf" at the ends.
inline std::string format_real(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  if (std::isnan(v)) return "nan";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

/// One connected piece of the real line. Endpoint flags are data; an
/// infinite endpoint is never closed.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_closed = false;
  bool hi_closed = false;

  static Interval closed(double a, double b) { return {a, b, !std::isinf(a), !std::isinf(b)}; }
  static Interval open(double a, double b) { return {a, b, false, false}; }
  static Interval left_open(double a, double b) { return {a, b, false, !std::isinf(b)}; }
  static Interval right_open(double a, double b) { return {a, b, !std::isinf(a), false}; }
  static Interval point(double a) { return {a, a, true, true}; }
  static Interval below(double b, bool closed) { return {-kInf, b, false, closed}; }
  static Interval above(double a, bool closed) { return {a, kInf, closed, false}; }
  static Interval whole() { return {-kInf, kInf, false, false}; }

  bool well_formed() const {
    if (std::isnan(lo) || std::isnan(hi)) return false;
    if (lo > hi) return false;
    if (std::isinf(lo) && lo > 0) return false;
    if (std::isinf(hi) && hi < 0) return false;
    if ((std::isinf(lo) && lo_closed) || (std::isinf(hi) && hi_closed)) return false;
    return true;
  }

  bool empty() const {
    return !(lo < hi || (lo == hi && lo_closed && hi_closed));
  }

  bool is_point() const { return lo == hi && lo_closed && hi_closed; }

  bool contains(double x) const {
    const bool above_lo = lo_closed ? x >= lo : x > lo;
    const bool below_hi = hi_closed ? x <= hi : x < hi;
    return above_lo && below_hi;
  }

  friend bool operator==(const Interval&, const Interval&) = default;

  std::string to_string() const {
    if (is_point()) return "{" + format_real(lo) + "}";
    return std::string(lo_closed ? "[" : "(") + format_real(lo) + ", " + format_real(hi) +
           (hi_closed ? "]" : ")");
  }
};

namespace detail {

// a starts before b: lower bound further left, closed wins on ties
inline bool lower_before(const Interval& a, const Interval& b) {
  if (a.lo != b.lo) return a.lo < b.lo;
  return a.lo_closed && !b.lo_closed;
}

// a and b (a sorted first) overlap or touch so that their union is connected
inline bool joinable(const Interval& a, const Interval& b) {
  if (b.lo < a.hi) return true;
  if (b.lo == a.hi) return a.hi_closed || b.lo_closed;
  return false;
}

}  // namespace detail

/// Finite union of disjoint intervals kept sorted and merged.
class RealSet {
 public:
  RealSet() = default;

  explicit RealSet(std::vector<Interval> parts) {
    for (const auto& p : parts) {
      if (!p.well_formed()) {
        throw error(errc::malformed_set, "component " + p.to_string() + " is not well formed");
      }
    }
    std::erase_if(parts, [](const Interval& p) { return p.empty(); });
    std::sort(parts.begin(), parts.end(), detail::lower_before);
    for (const auto& p : parts) {
      if (!parts_.empty() && detail::joinable(parts_.back(), p)) {
        auto& last = parts_.back();
        if (p.hi > last.hi) {
          last.hi = p.hi;
          last.hi_closed = p.hi_closed;
        } else if (p.hi == last.hi) {
          last.hi_closed = last.hi_closed || p.hi_closed;
        }
      } else {
        parts_.push_back(p);
      }
    }
  }

  RealSet(std::initializer_list<Interval> parts) : RealSet(std::vector<Interval>(parts)) {}

  static RealSet single(const Interval& i) { return RealSet({i}); }
  static RealSet everything() { return RealSet({Interval::whole()}); }

  const std::vector<Interval>& components() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  std::size_t size() const { return parts_.size(); }

  bool contains(double x) const {
    return std::any_of(parts_.begin(), parts_.end(),
                       [x](const Interval& p) { return p.contains(x); });
  }

  RealSet unite(const RealSet& other) const {
    std::vector<Interval> all = parts_;
    all.insert(all.end(), other.parts_.begin(), other.parts_.end());
    return RealSet(std::move(all));
  }

  RealSet intersect(const RealSet& other) const {
    std::vector<Interval> out;
    for (const auto& a : parts_) {
      for (const auto& b : other.parts_) {
        Interval c;
        if (a.lo > b.lo) {
          c.lo = a.lo;
          c.lo_closed = a.lo_closed;
        } else if (b.lo > a.lo) {
          c.lo = b.lo;
          c.lo_closed = b.lo_closed;
        } else {
          c.lo = a.lo;
          c.lo_closed = a.lo_closed && b.lo_closed;
        }
        if (a.hi < b.hi) {
          c.hi = a.hi;
          c.hi_closed = a.hi_closed;
        } else if (b.hi < a.hi) {
          c.hi = b.hi;
          c.hi_closed = b.hi_closed;
        } else {
          c.hi = a.hi;
          c.hi_closed = a.hi_closed && b.hi_closed;
        }
        if (c.lo <= c.hi && !c.empty()) out.push_back(c);
      }
    }
    return RealSet(std::move(out));
  }

  RealSet complement() const {
    std::vector<Interval> out;
    double lo = -kInf;
    bool lo_closed = false;
    for (const auto& p : parts_) {
      Interval gap{lo, p.lo, lo_closed, !p.lo_closed && !std::isinf(p.lo)};
      if (!(std::isinf(p.lo) && p.lo < 0) && !gap.empty()) out.push_back(gap);
      lo = p.hi;
      lo_closed = !p.hi_closed && !std::isinf(p.hi);
    }
    if (!(std::isinf(lo) && lo > 0)) {
      Interval tail{lo, kInf, lo_closed, false};
      if (!tail.empty()) out.push_back(tail);
    }
    return RealSet(std::move(out));
  }

  RealSet minus(const RealSet& other) const { return intersect(other.complement()); }

  friend bool operator==(const RealSet&, const RealSet&) = default;

  std::string to_string() const {
    if (parts_.empty()) return "{}";
    std::string s;
    for (std::size_t i = 0; i < parts_.size(); ++i) {
      if (i) s += " U ";
      s += parts_[i].to_string();
    }
    return s;
  }

 private:
  std::vector<Interval> parts_;
};

}  // namespace dtx

#endif  // DTX_REAL_SET_HPP
