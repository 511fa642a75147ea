#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace sand {

enum class ErrorCode {
  kParse,
  kEmptyGraph,
  kIo,
  kOverflow,
  kNotANeighbor,
  kNodeOutOfRange,
  kCannotSample,
  kDegreeTooSmall,
  kBiasUndefined,
  kNotACis,
  kMode,
  kOrbitOutOfRange,
  kEstimatorUndefined,
  kInconsistentEstimates,
  kUnsupportedPair,
  kEmptyInput,
  kGuardExceeded,
  kInvalidArgument,
};

std::string_view to_string(ErrorCode code);

// All library failures surface as this one exception type; callers switch on
// code() when they need to distinguish (the CLI maps codes to exit statuses).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace sand
