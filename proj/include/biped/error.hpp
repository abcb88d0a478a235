#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace biped {

enum class ErrorKind {
  NonPositiveHeight,
  HeightOutOfRange,
  NonPositiveMass,
  BadMassFractions,
  BadLimits,
  NonPositiveLength,
  Unreachable,
  OutOfPlane,
  Degenerate,
  SupportFootAirborne,
  EmptySearchSpace,
  InvalidSwarmConfig,
  InvalidGaitConfig,
  TargetUnreachable,
  NotForward,
  EmptyTrajectory,
  ChannelMismatch,
  ParseError,
  SchemaError,
  InvariantError,
  MissingMarker,
  NonMonotoneFrames,
  UnknownChannel,
  TooFewRecords,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library. `key()` names the offending input
/// (config key, marker name, channel) when one exists.
class Error : public std::runtime_error {
public:
  Error(ErrorKind kind, const std::string& message, std::string key = {})
      : std::runtime_error(std::string(to_string(kind)) + ": " + message),
        kind_(kind), key_(std::move(key)) {}

  ErrorKind kind() const noexcept { return kind_; }
  const std::string& key() const noexcept { return key_; }

private:
  ErrorKind kind_;
  std::string key_;
};

}  // namespace biped
