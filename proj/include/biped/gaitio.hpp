#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "biped/anthro.hpp"
#include "biped/compare.hpp"
#include "biped/gaitgen.hpp"

namespace biped {

// ---------------------------------------------------------------------------
// Run configuration (JSON)
// ---------------------------------------------------------------------------

struct RunConfig {
  double height = 1.70;
  double mass = 70.0;
  std::optional<std::array<double, kSegmentCount>> mass_fractions;
  std::optional<std::array<double, kSegmentCount>> com_locations;
  std::optional<JointLimits> joint_limits;
  GaitConfig gait;

  Skeleton skeleton() const;
  bool operator==(const RunConfig&) const = default;
};

/// Parses and validates a JSON run configuration, filling defaults for absent
/// keys. Throws ParseError, SchemaError or InvariantError; Error::key() names
/// the offending key.
RunConfig load_config(std::string_view text);

/// Validates every invariant of an in-memory config (InvariantError).
void validate_config(const RunConfig& cfg);

/// JSON text with every key present; load_config(dump_config(c)) == c.
std::string dump_config(const RunConfig& cfg);

// ---------------------------------------------------------------------------
// Trajectory CSV
// ---------------------------------------------------------------------------

/// Column names of the trajectory CSV, in order.
std::vector<std::string> trajectory_columns();

/// Header plus one row per record. Numbers use the shortest decimal that
/// round-trips. Throws EmptyTrajectory.
std::string export_trajectory(const GaitTrajectory& trajectory);

/// Inverse of export_trajectory; residuals are not part of the format and read
/// back as zero. Throws ParseError.
GaitTrajectory import_trajectory(std::string_view text);

std::string format_number(double v);

// ---------------------------------------------------------------------------
// Reference marker CSV
// ---------------------------------------------------------------------------

inline constexpr std::array<std::string_view, 8> kRequiredMarkers{
    "hip_left", "knee_left", "ankle_left", "foot_left",
    "hip_right", "knee_right", "ankle_right", "foot_right"};

struct ReferenceTrajectory {
  double frame_rate = 100.0;  // Hz
  std::vector<long> frames;   // sorted, contiguous
  std::map<std::string, std::vector<Point3>> markers;
  long cycle_begin = 0;
  long cycle_end = 0;

  /// "<marker>_x|y|z" channels over time normalized by the cycle bounds.
  ChannelTable channels() const;
};

/// Header `frame,marker,x,y,z`; rows in any order; optional `# frame_rate=<hz>`
/// comment. Throws ParseError, MissingMarker, NonMonotoneFrames.
ReferenceTrajectory import_markers(std::string_view text);

// ---------------------------------------------------------------------------
// SVG plots
// ---------------------------------------------------------------------------

/// Channels matching `selector`: an exact channel name, or every channel named
/// `<selector>_*`. Throws UnknownChannel.
std::vector<std::string> select_channels(const ChannelTable& table, std::string_view selector);

/// Self-contained SVG with one polyline per selected channel against record
/// index. Throws UnknownChannel, TooFewRecords.
std::string emit_plot(const GaitTrajectory& trajectory, std::string_view selector);

}  // namespace biped
