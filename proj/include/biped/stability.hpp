#pragma once

#include <array>
#include <span>
#include <vector>

#include <Eigen/Core>

#include "biped/anthro.hpp"
#include "biped/kinematics.hpp"

namespace biped {

using Point2 = Eigen::Vector2d;

/// Height below which an ankle counts as resting on the floor.
inline constexpr double kGroundTolerance = 1e-6;
inline constexpr double kContainsTolerance = 1e-9;

inline Point2 ground_projection(const Point3& p) { return {p.x(), p.y()}; }

/// Rectangular footprint, counter-clockwise from the rear-right corner.
struct Footprint {
  std::array<Point2, 4> corners;
};

Footprint footprint(const Point3& ankle, const SegmentLengths& lengths, double forward_offset = 0.0);

/// Andrew's monotone chain. Returns the counter-clockwise hull without collinear
/// vertices. Throws Degenerate for fewer than 3 distinct or all-collinear points.
std::vector<Point2> convex_hull(std::span<const Point2> points);

enum class PolygonMode {
  Footprint,     // single foot rectangle or hull of both rectangles
  AnkleSegment,  // segment joining the two ankle projections
};

struct PolygonOptions {
  PolygonMode mode = PolygonMode::Footprint;
  double footprint_offset = 0.0;

  bool operator==(const PolygonOptions&) const = default;
};

struct SupportPolygon {
  std::vector<Point2> vertices;  // counter-clockwise; two entries in segment mode
  SupportPhase phase = SupportPhase::Double;
  Point2 centroid = Point2::Zero();

  bool is_segment() const { return vertices.size() == 2; }
};

SupportPolygon support_polygon(SupportPhase phase, const Point3& left_ankle,
                               const Point3& right_ankle, const SegmentLengths& lengths,
                               const PolygonOptions& options = {});

/// Closed-set containment: boundary points are inside.
bool contains(const SupportPolygon& polygon, const Point2& p);

/// Area-weighted centroid of a counter-clockwise polygon (midpoint for a segment).
Point2 centroid(std::span<const Point2> vertices);
inline Point2 centroid(const SupportPolygon& polygon) { return centroid(polygon.vertices); }

/// Signed distance from `p` to the nearest edge line, positive inside, together
/// with that edge's outward unit normal. For a segment the margin is minus the
/// distance to the segment.
struct BoundaryMargin {
  double margin = 0.0;
  Point2 outward_normal = Point2::Zero();
};
BoundaryMargin boundary_margin(const SupportPolygon& polygon, const Point2& p);

struct PointMass {
  Point3 position;
  double mass = 0.0;
};

/// Seven mass-bearing elements: femur, tibia and foot per side plus the trunk
/// lump at the pelvis. Each segment's mass sits at its com_location fraction
/// between proximal and distal ends. Order: left femur, tibia, foot, then the
/// same for the right leg, then the trunk.
std::vector<PointMass> segment_masses(const Posture& posture, const MassModel& masses,
                                      const SegmentLengths& lengths);

/// Floor projection of the mass-weighted mean position.
Point2 weighted_projection(std::span<const PointMass> points);

Point2 com_projection(const Posture& posture, const MassModel& masses,
                      const SegmentLengths& lengths);

enum class FitnessMode { L1, Euclidean };

/// Distance between the COM projection and the polygon's center of gravity.
/// L1 is |dx| + |dy|; Euclidean is the usual norm.
double posture_fitness(const Point2& com, const SupportPolygon& polygon,
                       FitnessMode mode = FitnessMode::L1);

struct StabilityReport {
  bool stable = false;
  Point2 com = Point2::Zero();
  SupportPolygon polygon;
  BoundaryMargin margin;
};

/// COM projection inside the support polygon of the posture's phase.
/// Throws SupportFootAirborne when a support ankle is above the ground tolerance.
StabilityReport is_statically_stable(const Posture& posture, const MassModel& masses,
                                     const SegmentLengths& lengths,
                                     const PolygonOptions& options = {});

}  // namespace biped
