#include "biped/anthro.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "biped/error.hpp"

namespace biped {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonPositiveHeight: return "NonPositiveHeight";
    case ErrorKind::HeightOutOfRange: return "HeightOutOfRange";
    case ErrorKind::NonPositiveMass: return "NonPositiveMass";
    case ErrorKind::BadMassFractions: return "BadMassFractions";
    case ErrorKind::BadLimits: return "BadLimits";
    case ErrorKind::NonPositiveLength: return "NonPositiveLength";
    case ErrorKind::Unreachable: return "Unreachable";
    case ErrorKind::OutOfPlane: return "OutOfPlane";
    case ErrorKind::Degenerate: return "Degenerate";
    case ErrorKind::SupportFootAirborne: return "SupportFootAirborne";
    case ErrorKind::EmptySearchSpace: return "EmptySearchSpace";
    case ErrorKind::InvalidSwarmConfig: return "InvalidSwarmConfig";
    case ErrorKind::InvalidGaitConfig: return "InvalidGaitConfig";
    case ErrorKind::TargetUnreachable: return "TargetUnreachable";
    case ErrorKind::NotForward: return "NotForward";
    case ErrorKind::EmptyTrajectory: return "EmptyTrajectory";
    case ErrorKind::ChannelMismatch: return "ChannelMismatch";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::SchemaError: return "SchemaError";
    case ErrorKind::InvariantError: return "InvariantError";
    case ErrorKind::MissingMarker: return "MissingMarker";
    case ErrorKind::NonMonotoneFrames: return "NonMonotoneFrames";
    case ErrorKind::UnknownChannel: return "UnknownChannel";
    case ErrorKind::TooFewRecords: return "TooFewRecords";
  }
  return "Unknown";
}

double degrees(double r) { return r * 180.0 / std::numbers::pi; }
double radians(double d) { return d * std::numbers::pi / 180.0; }

SegmentLengths segment_lengths(double h) {
  if (!(h > 0.0))
    throw Error(ErrorKind::NonPositiveHeight, "height must be positive", "height");
  if (h < kMinHeight || h > kMaxHeight)
    throw Error(ErrorKind::HeightOutOfRange,
                "height " + std::to_string(h) + " m outside [0.5, 2.5] m", "height");

  SegmentLengths l;
  l.foot_length = 0.152 * h;
  l.foot_breadth = 0.055 * h;
  l.tibia_length = 0.246 * h;
  l.leg_length = 0.53 * h;
  l.inter_hip = 0.191 * h;
  l.femur_length = l.leg_length - l.tibia_length;
  return l;
}

std::array<double, kSegmentCount> default_mass_fractions() {
  // order follows Segment
  return {0.0145, 0.0145, 0.0465, 0.0465, 0.100, 0.100, 0.678};
}

JointLimits default_joint_limits() {
  const JointRange frontal{radians(-15.0), radians(15.0)};
  return JointLimits{
      .hip = {{radians(-25.0), radians(35.0)}, frontal},
      .knee = {{radians(0.0), radians(70.0)}, frontal},
      .ankle = {{radians(-20.0), radians(20.0)}, frontal},
  };
}

void validate_mass_model(const MassModel& masses) {
  if (!(masses.total_mass > 0.0))
    throw Error(ErrorKind::NonPositiveMass, "total mass must be positive", "mass");
  double sum = 0.0;
  for (double f : masses.fractions) {
    if (!(f > 0.0 && f < 1.0))
      throw Error(ErrorKind::BadMassFractions, "every fraction must lie in (0, 1)",
                  "mass_fractions");
    sum += f;
  }
  if (std::abs(sum - 1.0) > kFractionSumTolerance)
    throw Error(ErrorKind::BadMassFractions,
                "fractions sum to " + std::to_string(sum) + ", expected 1", "mass_fractions");
  for (double c : masses.com_locations) {
    if (!(c >= 0.0 && c <= 1.0))
      throw Error(ErrorKind::BadMassFractions, "com location must lie in [0, 1]",
                  "com_locations");
  }
}

void validate_joint_limits(const JointLimits& limits) {
  for (Joint j : kJoints) {
    const JointLimit& l = limits[j];
    for (const JointRange* r : {&l.theta, &l.alpha}) {
      if (!std::isfinite(r->min) || !std::isfinite(r->max) || !(r->min < r->max))
        throw Error(ErrorKind::BadLimits, "joint range min must be below max", "joint_limits");
    }
  }
  if (limits.knee.theta.min < 0.0)
    throw Error(ErrorKind::BadLimits, "knee sagittal range must not allow hyperextension",
                "joint_limits");
}

Skeleton build_skeleton(double h, double total_mass, const SkeletonOverrides& overrides) {
  Skeleton sk;
  sk.height = h;
  sk.lengths = segment_lengths(h);
  sk.masses.total_mass = total_mass;
  sk.masses.fractions = overrides.fractions.value_or(default_mass_fractions());
  if (overrides.com_locations)
    sk.masses.com_locations = *overrides.com_locations;
  else
    sk.masses.com_locations.fill(0.5);
  sk.limits = overrides.limits.value_or(default_joint_limits());
  validate_mass_model(sk.masses);
  validate_joint_limits(sk.limits);
  return sk;
}

}  // namespace biped
