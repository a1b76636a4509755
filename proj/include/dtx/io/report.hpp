#ifndef DTX_IO_REPORT_HPP
#define DTX_IO_REPORT_HPP

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dtx/real_set.hpp"
#include "dtx/verify.hpp"

namespace dtx::io {

struct InputFile {
  std::string path;
  std::string sha256;
};

/// Everything a command prints. The body is a pure function of the
/// inputs, seed and n; the wall-clock time is kept apart from it.
struct RunReport {
  std::string command;
  std::vector<InputFile> inputs;
  std::uint64_t seed = 42;
  std::size_t n = 100000;
  std::string streams;
  std::vector<std::pair<std::string, nlohmann::ordered_json>> values;
  std::vector<CheckResult> checks;
  double wall_clock_ms = 0.0;

  void put(std::string key, nlohmann::ordered_json v) { values.emplace_back(std::move(key), std::move(v)); }

  bool all_passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
  }
};

namespace detail {

inline std::string cell(const nlohmann::ordered_json& v) {
  if (v.is_number()) return format_real(v.get<double>());
  if (v.is_string()) return v.get<std::string>();
  if (v.is_array()) {
    std::string s;
    for (const auto& e : v) s += (s.empty() ? "" : " ") + cell(e);
    return s;
  }
  return v.dump();
}

inline nlohmann::ordered_json number(double v) {
  if (std::isfinite(v)) return v;
  return format_real(v);
}

}  // namespace detail

inline nlohmann::ordered_json report_body_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["command"] = r.command;
  j["inputs"] = nlohmann::ordered_json::array();
  for (const auto& in : r.inputs) j["inputs"].push_back({{"path", in.path}, {"sha256", in.sha256}});
  j["seed"] = r.seed;
  j["n"] = r.n;
  j["streams"] = r.streams;
  nlohmann::ordered_json vals = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.values) vals[k] = v;
  j["values"] = vals;
  j["checks"] = nlohmann::ordered_json::array();
  for (const auto& c : r.checks) {
    j["checks"].push_back({{"name", c.name},
                           {"status", c.passed ? "pass" : "fail"},
                           {"value", detail::number(c.value)},
                           {"threshold", detail::number(c.threshold)},
                           {"detail", c.detail}});
  }
  j["status"] = r.all_passed() ? "pass" : "fail";
  return j;
}

inline std::string render_json(const RunReport& r) {
  nlohmann::ordered_json j;
  j["report"] = report_body_json(r);
  j["wall_clock_ms"] = r.wall_clock_ms;
  return j.dump(2) + "\n";
}

inline std::string render_table_body(const RunReport& r) {
  std::ostringstream os;
  os << "# command: " << r.command << "\n";
  for (const auto& in : r.inputs) os << "# input: " << in.path << " sha256=" << in.sha256 << "\n";
  os << "# seed: " << r.seed << "  n: " << r.n << "\n";
  if (!r.streams.empty()) os << "# streams: " << r.streams << "\n";
  std::size_t w = 0;
  for (const auto& [k, _] : r.values) w = std::max(w, k.size());
  for (const auto& [k, v] : r.values) {
    os << k << std::string(w - k.size() + 2, ' ') << detail::cell(v) << "\n";
  }
  if (!r.checks.empty()) {
    std::size_t cw = 5;
    for (const auto& c : r.checks) cw = std::max(cw, c.name.size());
    os << "check" << std::string(cw - 3, ' ') << "status  value  threshold  detail\n";
    for (const auto& c : r.checks) {
      os << c.name << std::string(cw - c.name.size() + 2, ' ') << (c.passed ? "pass  " : "FAIL  ")
         << "  " << format_real(c.value) << "  " << format_real(c.threshold);
      if (!c.detail.empty()) os << "  " << c.detail;
      os << "\n";
    }
    os << "# status: " << (r.all_passed() ? "pass" : "fail") << "\n";
  }
  return os.str();
}

inline std::string render_table(const RunReport& r) {
  std::ostringstream os;
  os << render_table_body(r) << "# wall-clock: " << format_real(r.wall_clock_ms) << " ms\n";
  return os.str();
}

}  // namespace dtx::io

#endif  // DTX_IO_REPORT_HPP
