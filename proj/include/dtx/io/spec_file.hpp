#ifndef DTX_IO_SPEC_FILE_HPP
#define DTX_IO_SPEC_FILE_HPP

// Distribution files:
//
//   {"base": 0,
//    "breakpoints": [{"x": 0.0, "atom": 0.5}, {"x": 1.0, "atom": 0.5}],
//    "segments":    [{"from": 0.0, "to": 0.25, "increase": 0.25}]}
//
// Segment ends become breakpoints (atom 0) when not listed. A segment that
// spans interior breakpoints is split across them in proportion to length.
// Atoms and increases must add up to 1 within 1e-9; the result is rescaled
// so that the limits are exactly 0 and 1.

#include <algorithm>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "dtx/cdf.hpp"
#include "dtx/error.hpp"
#include "dtx/monotone.hpp"

namespace dtx::io {

inline constexpr double kMassTolerance = 1e-9;

/// A distribution file that cannot be read, parsed or validated. `field()`
/// names the offending JSON path (empty for I/O and syntax errors).
class spec_error : public std::runtime_error {
 public:
  spec_error(std::string field, const std::string& what)
      : std::runtime_error(field.empty() ? what : field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const { return field_; }

 private:
  std::string field_;
};

namespace detail {

inline double number_at(const nlohmann::json& obj, const char* key, const std::string& path,
                        bool required = true, double fallback = 0.0) {
  if (!obj.contains(key)) {
    if (required) throw spec_error(path + "." + key, "missing required number");
    return fallback;
  }
  const auto& v = obj.at(key);
  if (!v.is_number()) throw spec_error(path + "." + key, "expected a number, got " + std::string(v.type_name()));
  const double d = v.get<double>();
  if (!std::isfinite(d)) throw spec_error(path + "." + key, "must be finite");
  return d;
}

inline void only_keys(const nlohmann::json& obj, std::initializer_list<const char*> keys,
                      const std::string& path) {
  for (const auto& [k, _] : obj.items()) {
    if (std::none_of(keys.begin(), keys.end(), [&k](const char* a) { return k == a; })) {
      throw spec_error(path.empty() ? k : path + "." + k, "unknown field");
    }
  }
}

}  // namespace detail

/// Parsed but not yet normalized content of a distribution file.
struct SpecContent {
  double base = 0.0;
  std::vector<double> xs;
  std::vector<double> atoms;
  std::vector<double> increases;

  double mass() const {
    double m = 0.0;
    for (double a : atoms) m += a;
    for (double s : increases) m += s;
    return m;
  }
};

inline SpecContent parse_spec_content(const std::string& text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw spec_error("", e.what());
  }
  if (!doc.is_object()) throw spec_error("", "top level must be an object");
  detail::only_keys(doc, {"base", "breakpoints", "segments"}, "");

  SpecContent out;
  out.base = detail::number_at(doc, "base", "", false, 0.0);
  if (!doc.contains("breakpoints")) throw spec_error("breakpoints", "missing required list");
  if (!doc["breakpoints"].is_array()) throw spec_error("breakpoints", "expected a list");

  std::map<double, double> atoms;
  std::map<double, std::string> origin;
  const auto& bps = doc["breakpoints"];
  for (std::size_t i = 0; i < bps.size(); ++i) {
    const std::string path = "breakpoints[" + std::to_string(i) + "]";
    if (!bps[i].is_object()) throw spec_error(path, "expected an object {x, atom}");
    detail::only_keys(bps[i], {"x", "atom"}, path);
    const double x = detail::number_at(bps[i], "x", path);
    const double a = detail::number_at(bps[i], "atom", path, false, 0.0);
    if (a < 0.0) throw spec_error(path + ".atom", "must be non-negative");
    if (atoms.count(x)) throw spec_error(path + ".x", "duplicate breakpoint, also at " + origin[x]);
    atoms[x] = a;
    origin[x] = path;
  }

  struct Seg {
    double from, to, inc;
    std::string path;
  };
  std::vector<Seg> segs;
  if (doc.contains("segments")) {
    if (!doc["segments"].is_array()) throw spec_error("segments", "expected a list");
    const auto& ss = doc["segments"];
    for (std::size_t i = 0; i < ss.size(); ++i) {
      const std::string path = "segments[" + std::to_string(i) + "]";
      if (!ss[i].is_object()) throw spec_error(path, "expected an object {from, to, increase}");
      detail::only_keys(ss[i], {"from", "to", "increase"}, path);
      Seg s{detail::number_at(ss[i], "from", path), detail::number_at(ss[i], "to", path),
            detail::number_at(ss[i], "increase", path), path};
      if (!(s.from < s.to)) throw spec_error(path, "'from' must be smaller than 'to'");
      if (s.inc < 0.0) throw spec_error(path + ".increase", "must be non-negative");
      atoms.try_emplace(s.from, 0.0);
      atoms.try_emplace(s.to, 0.0);
      segs.push_back(std::move(s));
    }
  }
  std::sort(segs.begin(), segs.end(), [](const Seg& a, const Seg& b) { return a.from < b.from; });
  for (std::size_t i = 1; i < segs.size(); ++i) {
    if (segs[i].from < segs[i - 1].to) {
      throw spec_error(segs[i].path, "overlaps " + segs[i - 1].path);
    }
  }

  for (const auto& [x, a] : atoms) {
    out.xs.push_back(x);
    out.atoms.push_back(a);
  }
  out.increases.assign(out.xs.empty() ? 0 : out.xs.size() - 1, 0.0);
  for (const auto& s : segs) {
    const auto lo = static_cast<std::size_t>(std::lower_bound(out.xs.begin(), out.xs.end(), s.from) - out.xs.begin());
    const auto hi = static_cast<std::size_t>(std::lower_bound(out.xs.begin(), out.xs.end(), s.to) - out.xs.begin());
    const double width = s.to - s.from;
    for (std::size_t k = lo; k < hi; ++k) {
      out.increases[k] += s.inc * ((out.xs[k + 1] - out.xs[k]) / width);
    }
  }
  return out;
}

/// Parses, validates and normalizes a distribution file's text.
inline Cdf parse_distribution(const std::string& text) {
  const SpecContent c = parse_spec_content(text);
  const double mass = c.mass();
  if (mass == 0.0) {
    throw error(errc::degenerate_range, "all atoms and increases are zero: the function is constant");
  }
  if (std::abs(mass - 1.0) > kMassTolerance) {
    throw spec_error("breakpoints", "atoms and increases add up to " + format_real(mass) +
                                        ", expected 1 within 1e-9");
  }
  return normalize(MonotoneStepLinear::from_masses(c.xs, c.atoms, c.increases, c.base));
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw spec_error("", "cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline Cdf load_distribution(const std::string& path) { return parse_distribution(read_file(path)); }

/// Inverse of the loader: one breakpoint entry per knot, one segment per
/// rising piece.
inline std::string to_spec_json(const Cdf& f) {
  nlohmann::json doc;
  doc["base"] = 0.0;
  doc["breakpoints"] = nlohmann::json::array();
  doc["segments"] = nlohmann::json::array();
  const auto& g = f.body();
  for (std::size_t i = 0; i < g.size(); ++i) {
    doc["breakpoints"].push_back({{"x", g.x(i)}, {"atom", g.atom(i)}});
    if (i + 1 < g.size() && !g.flat(i)) {
      doc["segments"].push_back({{"from", g.x(i)}, {"to", g.x(i + 1)}, {"increase", g.increase(i)}});
    }
  }
  return doc.dump(2);
}

}  // namespace dtx::io

#endif  // DTX_IO_SPEC_FILE_HPP
