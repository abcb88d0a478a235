#pragma once

#include <array>
#include <cstddef>
#include <optional>

namespace biped {

/// Segment dimensions in meters, all proportional to body height.
struct SegmentLengths {
  double foot_length = 0.0;
  double foot_breadth = 0.0;
  double tibia_length = 0.0;   // knee to ankle
  double leg_length = 0.0;     // hip to ankle
  double inter_hip = 0.0;
  double femur_length = 0.0;   // leg_length - tibia_length

  bool operator==(const SegmentLengths&) const = default;
};

enum class Segment : std::size_t {
  FootLeft,
  FootRight,
  TibiaLeft,
  TibiaRight,
  FemurLeft,
  FemurRight,
  Trunk,  // pelvis + upper body, lumped at the pelvis midpoint
};
inline constexpr std::size_t kSegmentCount = 7;

struct MassModel {
  double total_mass = 0.0;
  std::array<double, kSegmentCount> fractions{};
  // fraction of segment length measured from the proximal end
  std::array<double, kSegmentCount> com_locations{};

  double fraction(Segment s) const { return fractions[static_cast<std::size_t>(s)]; }
  double com_location(Segment s) const { return com_locations[static_cast<std::size_t>(s)]; }
  double mass(Segment s) const { return total_mass * fraction(s); }

  bool operator==(const MassModel&) const = default;
};

struct JointRange {
  double min = 0.0;
  double max = 0.0;

  double clamp(double v) const { return v < min ? min : (v > max ? max : v); }
  bool contains(double v) const { return v >= min && v <= max; }
  bool operator==(const JointRange&) const = default;
};

/// Sagittal (theta) and frontal (alpha) ranges of one joint, radians.
struct JointLimit {
  JointRange theta;
  JointRange alpha;

  bool operator==(const JointLimit&) const = default;
};

enum class Joint : std::size_t { Hip, Knee, Ankle };
inline constexpr std::array<Joint, 3> kJoints{Joint::Hip, Joint::Knee, Joint::Ankle};

struct JointLimits {
  JointLimit hip;
  JointLimit knee;
  JointLimit ankle;

  const JointLimit& operator[](Joint j) const {
    switch (j) {
      case Joint::Hip: return hip;
      case Joint::Knee: return knee;
      default: return ankle;
    }
  }
  bool operator==(const JointLimits&) const = default;
};

struct Skeleton {
  double height = 0.0;
  SegmentLengths lengths;
  MassModel masses;
  JointLimits limits;
};

inline constexpr double kMinHeight = 0.5;
inline constexpr double kMaxHeight = 2.5;
inline constexpr double kFractionSumTolerance = 1e-9;

/// Anthropometric segment lengths for a walker of height `h` meters.
/// Throws NonPositiveHeight / HeightOutOfRange.
SegmentLengths segment_lengths(double h);

std::array<double, kSegmentCount> default_mass_fractions();
JointLimits default_joint_limits();

struct SkeletonOverrides {
  std::optional<std::array<double, kSegmentCount>> fractions;
  std::optional<std::array<double, kSegmentCount>> com_locations;
  std::optional<JointLimits> limits;
};

void validate_mass_model(const MassModel& masses);
void validate_joint_limits(const JointLimits& limits);

Skeleton build_skeleton(double h, double total_mass, const SkeletonOverrides& overrides = {});

double degrees(double radians);
double radians(double degrees);

}  // namespace biped
