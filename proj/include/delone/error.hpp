#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace delone {

enum class Errc {
  RegionOutsideWindow,
  MarginTooSmall,
  WindowTooSmall,
  EmptyBall,
  MultiplePoints,
  InvalidSpec,
  DensenessUnverifiable,
  NotASite,
  InconsistentDecorations,
  PatternNotAnchored,
  NotComposable,
  AsymmetricKernel,
  NoConvergence,
  SingularShift,
  UnnormalizedBump,
  Parse,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

// All library failures are reported through this type; what() starts with the
// error name so command-line users see e.g. "MarginTooSmall: ...".
class Error : public std::runtime_error {
public:
  Error(Errc code, const std::string& detail)
      : std::runtime_error(std::string(errc_name(code)) + ": " + detail), code_(code) {}

  Errc code() const noexcept { return code_; }

private:
  Errc code_;
};

}  // namespace delone
