#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qwalk {

enum class ErrorKind {
  InvalidArgument,
  DegeneratePoint,
  GaplessParameters,
  OnExcludedCircle,
  CurveHitsAxis,
  GridTooCoarse,
  UndefinedSign,
  PoleMismatch,
  MixedFamilies,
  OddRing,
  IncommensurateAlpha,
  BetaNonzero,
  UnsupportedParams,
  DimensionMismatch,
  TooLarge,
  RingTooSmall,
  SpecMismatch,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// True for kinds that signal a broken numerical contract rather than bad input.
/// These map to exit code 3 in the CLI; everything else is a validation error.
bool is_contract_violation(ErrorKind kind) noexcept;

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(std::string(to_string(kind)) + ": " + what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qwalk
