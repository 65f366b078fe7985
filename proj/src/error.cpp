#include "delone/error.hpp"

namespace delone {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::RegionOutsideWindow: return "RegionOutsideWindow";
    case Errc::MarginTooSmall: return "MarginTooSmall";
    case Errc::WindowTooSmall: return "WindowTooSmall";
    case Errc::EmptyBall: return "EmptyBall";
    case Errc::MultiplePoints: return "MultiplePoints";
    case Errc::InvalidSpec: return "InvalidSpec";
    case Errc::DensenessUnverifiable: return "DensenessUnverifiable";
    case Errc::NotASite: return "NotASite";
    case Errc::InconsistentDecorations: return "InconsistentDecorations";
    case Errc::PatternNotAnchored: return "PatternNotAnchored";
    case Errc::NotComposable: return "NotComposable";
    case Errc::AsymmetricKernel: return "AsymmetricKernel";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::SingularShift: return "SingularShift";
    case Errc::UnnormalizedBump: return "UnnormalizedBump";
    case Errc::Parse: return "Parse";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace delone
