#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wildfire {

enum class Errc {
  InvalidResolution,
  NonAlignedBoundary,
  NotOnBoundary,
  IndexNotInterior,
  DegenerateDenominator,
  NegativeDiscriminant,
  NumericalBlowup,
  ParseError,
  ValidationError,
  UnknownPreset,
  IoError,
};

const char* to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// message is prefixed with the code name so CLI output stays greppable.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class BlowupError : public Error {
 public:
  BlowupError(std::int64_t step, const std::string& what);

  std::int64_t step() const noexcept { return step_; }

 private:
  std::int64_t step_;
};

}  // namespace wildfire
