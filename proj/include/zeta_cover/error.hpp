#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>

namespace zeta_cover {

enum class ErrorKind {
  InvalidArgument,
  NonHermitian,
  NoConvergence,
  ToleranceNotMet,
  DegenerateSamples,
  ParseError,
  Disconnected,
  NonSurjective,
  NonUnitary,
  AllZero,
  NonDecaying,
  NonEvenExponent,
  GapCollapse,
  NonSimpleMonodromy,
  CountMismatch,
  TooLarge,
  IoError,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Single exception type for every failure raised by the library. The kind is
/// machine readable; `detail` carries an integer payload where one exists
/// (the cycle-voltage gcd for NonSurjective, the zero count for CountMismatch).
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message, std::int64_t detail = 0)
      : std::runtime_error(message), kind_(kind), detail_(detail) {}

  ErrorKind kind() const noexcept { return kind_; }
  std::int64_t detail() const noexcept { return detail_; }

 private:
  ErrorKind kind_;
  std::int64_t detail_;
};

}  // namespace zeta_cover
