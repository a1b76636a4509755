#ifndef DTX_IO_SET_SYNTAX_HPP
#define DTX_IO_SET_SYNTAX_HPP

// Text form of interval unions as accepted by the CLI:
//   (0.25, 0.5]     [1, inf)     {0.5}     {0, 1}     {}
//   (-inf, 0) U [1, 2]
// Components are kept in the order written, so they can be checked for
// order and overlap by measure_set.

#include <cctype>
#include <charconv>
#include <string>
#include <string_view>
#include <vector>

#include "dtx/error.hpp"
#include "dtx/real_set.hpp"

namespace dtx::io {

namespace detail {

class SetLexer {
 public:
  explicit SetLexer(std::string_view s) : s_(s) {}

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool done() {
    skip_ws();
    return pos_ == s_.size();
  }
  char peek() {
    skip_ws();
    return pos_ < s_.size() ? s_[pos_] : '\0';
  }
  bool accept(char c) {
    if (peek() != c) return false;
    ++pos_;
    return true;
  }
  void expect(char c) {
    if (!accept(c)) fail(std::string("expected '") + c + "'");
  }

  double number() {
    skip_ws();
    std::size_t end = pos_;
    while (end < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[end])) ||
                               s_[end] == '.' || s_[end] == '-' || s_[end] == '+')) {
      ++end;
    }
    std::string tok(s_.substr(pos_, end - pos_));
    std::string_view body = tok;
    bool neg = false;
    if (!body.empty() && (body[0] == '-' || body[0] == '+')) {
      neg = body[0] == '-';
      body.remove_prefix(1);
    }
    double v = 0.0;
    if (body == "inf") {
      v = kInf;
    } else {
      auto [p, ec] = std::from_chars(body.data(), body.data() + body.size(), v);
      if (ec != std::errc{} || p != body.data() + body.size() || body.empty()) {
        fail("bad number '" + tok + "'");
      }
    }
    pos_ = end;
    return neg ? -v : v;
  }

  [[noreturn]] void fail(const std::string& what) const {
    throw error(errc::malformed_set, what + " at offset " + std::to_string(pos_) + " in '" +
                                         std::string(s_) + "'");
  }

 private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline std::vector<Interval> parse_interval_union(std::string_view text) {
  detail::SetLexer lx(text);
  std::vector<Interval> out;
  if (lx.done()) lx.fail("empty input");
  for (;;) {
    const char open = lx.peek();
    if (open == '{') {
      lx.expect('{');
      if (!lx.accept('}')) {
        do {
          out.push_back(Interval::point(lx.number()));
        } while (lx.accept(','));
        lx.expect('}');
      }
    } else if (open == '(' || open == '[') {
      lx.accept(open);
      Interval iv;
      iv.lo_closed = open == '[';
      iv.lo = lx.number();
      lx.expect(',');
      iv.hi = lx.number();
      const char close = lx.peek();
      if (close != ')' && close != ']') lx.fail("expected ')' or ']'");
      lx.accept(close);
      iv.hi_closed = close == ']';
      if (!iv.well_formed()) {
        throw error(errc::malformed_interval, iv.to_string() + " is not a well-formed interval");
      }
      out.push_back(iv);
    } else {
      lx.fail("expected '(', '[' or '{'");
    }
    if (lx.done()) break;
    if (!lx.accept('U')) lx.fail("expected 'U' between components");
  }
  return out;
}

}  // namespace dtx::io

#endif  // DTX_IO_SET_SYNTAX_HPP
