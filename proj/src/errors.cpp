#include "wildfire/errors.hpp"

namespace wildfire {

const char* to_string(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidResolution: return "InvalidResolution";
    case Errc::NonAlignedBoundary: return "NonAlignedBoundary";
    case Errc::NotOnBoundary: return "NotOnBoundary";
    case Errc::IndexNotInterior: return "IndexNotInterior";
    case Errc::DegenerateDenominator: return "DegenerateDenominator";
    case Errc::NegativeDiscriminant: return "NegativeDiscriminant";
    case Errc::NumericalBlowup: return "NumericalBlowup";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::UnknownPreset: return "UnknownPreset";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

BlowupError::BlowupError(std::int64_t step, const std::string& what)
    : Error(Errc::NumericalBlowup, "step " + std::to_string(step) + ": " + what), step_(step) {}

}  // namespace wildfire
