#include "zeta_cover/error.hpp"

namespace zeta_cover {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NoConvergence: return "NoConvergence";
    case ErrorKind::ToleranceNotMet: return "ToleranceNotMet";
    case ErrorKind::DegenerateSamples: return "DegenerateSamples";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::Disconnected: return "Disconnected";
    case ErrorKind::NonSurjective: return "NonSurjective";
    case ErrorKind::NonUnitary: return "NonUnitary";
    case ErrorKind::AllZero: return "AllZero";
    case ErrorKind::NonDecaying: return "NonDecaying";
    case ErrorKind::NonEvenExponent: return "NonEvenExponent";
    case ErrorKind::GapCollapse: return "GapCollapse";
    case ErrorKind::NonSimpleMonodromy: return "NonSimpleMonodromy";
    case ErrorKind::CountMismatch: return "CountMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::IoError: return "IoError";
  }
  return "Unknown";
}

}  // namespace zeta_cover
