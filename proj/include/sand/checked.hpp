#pragma once

#include <cstdint>
#include <string>

#include "sand/error.hpp"

namespace sand {

// Count arithmetic for the per-node normalizers. These feed sampling
// probabilities directly, so a wrapped value must never escape.

inline std::uint64_t checked_add(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw Error(ErrorCode::kOverflow,
                "count overflow: " + std::to_string(a) + " + " + std::to_string(b));
  }
  return out;
}

inline std::uint64_t checked_mul(std::uint64_t a, std::uint64_t b) {
  std::uint64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw Error(ErrorCode::kOverflow,
                "count overflow: " + std::to_string(a) + " * " + std::to_string(b));
  }
  return out;
}

inline std::uint64_t checked_sub(std::uint64_t a, std::uint64_t b) {
  if (b > a) {
    throw Error(ErrorCode::kOverflow,
                "count underflow: " + std::to_string(a) + " - " + std::to_string(b));
  }
  return a - b;
}

}  // namespace sand
