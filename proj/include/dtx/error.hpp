#ifndef DTX_ERROR_HPP
#define DTX_ERROR_HPP

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace dtx {

enum class errc {
  invalid_function,
  degenerate_range,
  alpha_out_of_range,
  lambda_out_of_range,
  length_mismatch,
  alpha_not_in_jump_interval,
  transform_out_of_range,
  malformed_interval,
  malformed_set,
  stream_collision,
  empty_sample,
  dimension_mismatch,
  countermonotone_dimension,
  not_a_flat_level,
};

inline std::string_view to_string(errc code) {
  switch (code) {
    case errc::invalid_function: return "InvalidFunction";
    case errc::degenerate_range: return "DegenerateRange";
    case errc::alpha_out_of_range: return "AlphaOutOfRange";
    case errc::lambda_out_of_range: return "LambdaOutOfRange";
    case errc::length_mismatch: return "LengthMismatch";
    case errc::alpha_not_in_jump_interval: return "AlphaNotInJumpInterval";
    case errc::transform_out_of_range: return "TransformOutOfRange";
    case errc::malformed_interval: return "MalformedInterval";
    case errc::malformed_set: return "MalformedSet";
    case errc::stream_collision: return "StreamCollision";
    case errc::empty_sample: return "EmptySample";
    case errc::dimension_mismatch: return "DimensionMismatch";
    case errc::countermonotone_dimension: return "CountermonotoneDimension";
    case errc::not_a_flat_level: return "NotAFlatLevel";
  }
  return "Unknown";
}

/// Every failure raised by the library. `index()` is set for errors that
/// identify an offending position (AlphaNotInJumpInterval, NotAFlatLevel).
class error : public std::runtime_error {
 public:
  error(errc code, const std::string& what,
        std::optional<std::size_t> index = std::nullopt)
      : std::runtime_error(std::string(to_string(code)) + ": " + what),
        code_(code),
        index_(index) {}

  errc code() const noexcept { return code_; }
  std::optional<std::size_t> index() const noexcept { return index_; }

 private:
  errc code_;
  std::optional<std::size_t> index_;
};

namespace detail {

inline void require_alpha(double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw error(errc::alpha_out_of_range,
                "alpha must lie in (0,1), got " + std::to_string(alpha));
  }
}

// lambda in (0,1]
inline void require_lambda_half_open(double lambda) {
  if (!(lambda > 0.0 && lambda <= 1.0)) {
    throw error(errc::lambda_out_of_range,
                "lambda must lie in (0,1], got " + std::to_string(lambda));
  }
}

}  // namespace detail
}  // namespace dtx

#endif  // DTX_ERROR_HPP
