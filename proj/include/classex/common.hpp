#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

namespace classex {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline constexpr const char* kVersion = "1.0.0";

// Default ceiling for full element enumeration; callers that hit it must fall
// back to the character-table backend.
inline constexpr std::uint64_t kDefaultEnumerationCap = 50'000'000;

// Full element->class maps are only materialized up to this size.
inline constexpr std::uint64_t kClassMapLimit = 1'000'000;

inline constexpr long kDefaultConductorBound = 1 << 16;

class error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class parse_error : public error {
 public:
  using error::error;
};

class degree_mismatch : public error {
 public:
  using error::error;
};

// Refusal signal for enumeration beyond the configured cap.
class cap_exceeded : public error {
 public:
  using error::error;
};

class schema_error : public error {
 public:
  using error::error;
};

class alignment_error : public error {
 public:
  using error::error;
};

class conductor_overflow : public error {
 public:
  using error::error;
};

inline std::uint64_t lcm_u64(std::uint64_t a, std::uint64_t b) {
  return a / std::gcd(a, b) * b;
}

// FNV-1a, used for data-file checksums embedded in reports.
inline std::uint64_t fnv1a(const void* data, std::size_t len) {
  const auto* p = static_cast<const unsigned char*>(data);
  std::uint64_t h = 1469598103934665603ull;
  for (std::size_t i = 0; i < len; ++i) {
    h ^= p[i];
    h *= 1099511628211ull;
  }
  return h;
}

}  // namespace classex
