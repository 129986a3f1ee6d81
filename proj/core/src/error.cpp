#include "petrigame/error.hpp"

namespace petrigame {

std::string_view errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::Syntax: return "Syntax";
    case Errc::UnknownKey: return "UnknownKey";
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::EmptyPreset: return "EmptyPreset";
    case Errc::EmptyPostset: return "EmptyPostset";
    case Errc::UnobservableControllablePreplace: return "UnobservableControllablePreplace";
    case Errc::UnknownPlace: return "UnknownPlace";
    case Errc::UnknownTransition: return "UnknownTransition";
    case Errc::NotEnabled: return "NotEnabled";
    case Errc::SafetyViolation: return "SafetyViolation";
    case Errc::StateCapExceeded: return "StateCapExceeded";
    case Errc::NotARegion: return "NotARegion";
    case Errc::NotCompatible: return "NotCompatible";
    case Errc::ClosureCapExceeded: return "ClosureCapExceeded";
    case Errc::NotEnvironment: return "NotEnvironment";
    case Errc::XNotAllowed: return "XNotAllowed";
    case Errc::UnknownAtom: return "UnknownAtom";
    case Errc::StrategySelectsDisabled: return "StrategySelectsDisabled";
    case Errc::UnresolvedObservation: return "UnresolvedObservation";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::Io: return "Io";
  }
  return "Unknown";
}

}  // namespace petrigame
