#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace petrigame {

enum class Errc {
  Syntax,
  UnknownKey,
  DuplicateName,
  EmptyPreset,
  EmptyPostset,
  UnobservableControllablePreplace,
  UnknownPlace,
  UnknownTransition,
  NotEnabled,
  SafetyViolation,
  StateCapExceeded,
  NotARegion,
  NotCompatible,
  ClosureCapExceeded,
  NotEnvironment,
  XNotAllowed,
  UnknownAtom,
  StrategySelectsDisabled,
  UnresolvedObservation,
  InvalidArgument,
  Io,
};

std::string_view errc_name(Errc code) noexcept;

// Every failure raised by the library carries one of the codes above so that
// callers (and the CLI exit-code mapping) can branch without string matching.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message)
      : std::runtime_error(message), code_(code) {}

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace petrigame
