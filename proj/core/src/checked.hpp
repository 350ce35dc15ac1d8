#pragma once

#include <cstdint>

#include "qadio/error.hpp"

namespace qadio::detail {

__extension__ using int128 = __int128;

inline int128 checked_mul(int128 a, int128 b) {
  int128 out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("integer overflow in multiplication");
  }
  return out;
}

inline int128 checked_add(int128 a, int128 b) {
  int128 out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("integer overflow in addition");
  }
  return out;
}

inline std::int64_t narrow_int64(int128 v) {
  if (v > INT64_MAX || v < INT64_MIN) {
    throw OverflowError("value does not fit in 64-bit signed integer");
  }
  return static_cast<std::int64_t>(v);
}

inline std::int64_t checked_add64(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_add_overflow(a, b, &out)) {
    throw OverflowError("coefficient overflow while combining terms");
  }
  return out;
}

inline std::int64_t checked_mul64(std::int64_t a, std::int64_t b) {
  std::int64_t out;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw OverflowError("coefficient overflow in product");
  }
  return out;
}

}  // namespace qadio::detail
