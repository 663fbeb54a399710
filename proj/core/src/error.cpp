#include "qwalk/error.hpp"

namespace qwalk {

std::string_view to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::DegeneratePoint: return "DegeneratePoint";
    case ErrorKind::GaplessParameters: return "GaplessParameters";
    case ErrorKind::OnExcludedCircle: return "OnExcludedCircle";
    case ErrorKind::CurveHitsAxis: return "CurveHitsAxis";
    case ErrorKind::GridTooCoarse: return "GridTooCoarse";
    case ErrorKind::UndefinedSign: return "UndefinedSign";
    case ErrorKind::PoleMismatch: return "PoleMismatch";
    case ErrorKind::MixedFamilies: return "MixedFamilies";
    case ErrorKind::OddRing: return "OddRing";
    case ErrorKind::IncommensurateAlpha: return "IncommensurateAlpha";
    case ErrorKind::BetaNonzero: return "BetaNonzero";
    case ErrorKind::UnsupportedParams: return "UnsupportedParams";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::TooLarge: return "TooLarge";
    case ErrorKind::RingTooSmall: return "RingTooSmall";
    case ErrorKind::SpecMismatch: return "SpecMismatch";
  }
  return "Unknown";
}

bool is_contract_violation(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::PoleMismatch:
    case ErrorKind::GridTooCoarse:
    case ErrorKind::OnExcludedCircle:
    case ErrorKind::CurveHitsAxis:
      return true;
    default:
      return false;
  }
}

}  // namespace qwalk
