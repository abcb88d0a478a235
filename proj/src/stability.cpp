#include "biped/stability.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "biped/error.hpp"

namespace biped {

namespace {

double cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x() - o.x()) * (b.y() - o.y()) - (a.y() - o.y()) * (b.x() - o.x());
}

Point2 closest_on_segment(const Point2& a, const Point2& b, const Point2& p) {
  const Point2 ab = b - a;
  const double t = std::clamp((p - a).dot(ab) / ab.squaredNorm(), 0.0, 1.0);
  return a + t * ab;
}

}  // namespace

Footprint footprint(const Point3& ankle, const SegmentLengths& lengths, double forward_offset) {
  const double cx = ankle.x() + forward_offset;
  const double cy = ankle.y();
  const double hx = 0.5 * lengths.foot_length;
  const double hy = 0.5 * lengths.foot_breadth;
  return Footprint{{Point2(cx - hx, cy - hy), Point2(cx + hx, cy - hy), Point2(cx + hx, cy + hy),
                    Point2(cx - hx, cy + hy)}};
}

std::vector<Point2> convex_hull(std::span<const Point2> points) {
  std::vector<Point2> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end(), [](const Point2& a, const Point2& b) {
    return a.x() < b.x() || (a.x() == b.x() && a.y() < b.y());
  });
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3)
    throw Error(ErrorKind::Degenerate, "convex hull needs at least 3 distinct points");

  std::vector<Point2> hull(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && cross(hull[k - 2], hull[k - 1], p) <= 0.0) --k;
    hull[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && cross(hull[k - 2], hull[k - 1], pts[i]) <= 0.0) --k;
    hull[k++] = pts[i];
  }
  hull.resize(k - 1);
  if (hull.size() < 3)
    throw Error(ErrorKind::Degenerate, "all points are collinear");
  return hull;
}

Point2 centroid(std::span<const Point2> v) {
  if (v.size() == 2) return 0.5 * (v[0] + v[1]);
  double area2 = 0.0;
  Point2 acc = Point2::Zero();
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    const double w = a.x() * b.y() - b.x() * a.y();
    area2 += w;
    acc += w * (a + b);
  }
  return acc / (3.0 * area2);
}

SupportPolygon support_polygon(SupportPhase phase, const Point3& left_ankle,
                               const Point3& right_ankle, const SegmentLengths& lengths,
                               const PolygonOptions& options) {
  SupportPolygon poly;
  poly.phase = phase;
  if (options.mode == PolygonMode::AnkleSegment) {
    const Point2 a = ground_projection(left_ankle);
    const Point2 b = ground_projection(right_ankle);
    if ((a - b).norm() == 0.0)
      throw Error(ErrorKind::Degenerate, "ankle projections coincide");
    poly.vertices = {a, b};
  } else if (phase == SupportPhase::Double) {
    std::vector<Point2> corners;
    for (const Point3* ankle : {&left_ankle, &right_ankle}) {
      const Footprint f = footprint(*ankle, lengths, options.footprint_offset);
      corners.insert(corners.end(), f.corners.begin(), f.corners.end());
    }
    poly.vertices = convex_hull(corners);
  } else {
    const Point3& ankle = phase == SupportPhase::SingleLeft ? left_ankle : right_ankle;
    const Footprint f = footprint(ankle, lengths, options.footprint_offset);
    poly.vertices.assign(f.corners.begin(), f.corners.end());
  }
  poly.centroid = centroid(poly.vertices);
  return poly;
}

BoundaryMargin boundary_margin(const SupportPolygon& polygon, const Point2& p) {
  const auto& v = polygon.vertices;
  if (polygon.is_segment()) {
    const Point2 c = closest_on_segment(v[0], v[1], p);
    const Point2 d = p - c;
    const double dist = d.norm();
    Point2 n = dist > 0.0 ? Point2(d / dist) : Point2(-(v[1] - v[0]).y(), (v[1] - v[0]).x()).normalized();
    return {-dist, n};
  }
  BoundaryMargin best{std::numeric_limits<double>::infinity(), Point2::Zero()};
  for (std::size_t i = 0; i < v.size(); ++i) {
    const Point2& a = v[i];
    const Point2& b = v[(i + 1) % v.size()];
    const Point2 edge = b - a;
    const double len = edge.norm();
    // counter-clockwise order puts the interior on the left
    const double signed_distance = cross(a, b, p) / len;
    if (signed_distance < best.margin) {
      best.margin = signed_distance;
      best.outward_normal = Point2(edge.y(), -edge.x()) / len;
    }
  }
  return best;
}

bool contains(const SupportPolygon& polygon, const Point2& p) {
  return boundary_margin(polygon, p).margin >= -kContainsTolerance;
}

std::vector<PointMass> segment_masses(const Posture& posture, const MassModel& masses,
                                      const SegmentLengths& lengths) {
  auto along = [](const Point3& proximal, const Point3& distal, double t) -> Point3 {
    return proximal + t * (distal - proximal);
  };
  std::vector<PointMass> out;
  out.reserve(kSegmentCount);
  for (Side side : {Side::Left, Side::Right}) {
    const LegPose& leg = posture.leg(side);
    const bool left = side == Side::Left;
    const Segment femur = left ? Segment::FemurLeft : Segment::FemurRight;
    const Segment tibia = left ? Segment::TibiaLeft : Segment::TibiaRight;
    const Segment foot = left ? Segment::FootLeft : Segment::FootRight;
    const FootPoints fp = foot_points(leg.ankle.position, leg.angles(), lengths);
    out.push_back({along(leg.hip.position, leg.knee.position, masses.com_location(femur)),
                   masses.mass(femur)});
    out.push_back({along(leg.knee.position, leg.ankle.position, masses.com_location(tibia)),
                   masses.mass(tibia)});
    out.push_back({along(fp.heel, fp.toe, masses.com_location(foot)), masses.mass(foot)});
  }
  out.push_back({posture.pelvis, masses.mass(Segment::Trunk)});
  return out;
}

Point2 weighted_projection(std::span<const PointMass> points) {
  double total = 0.0;
  Point2 acc = Point2::Zero();
  for (const PointMass& p : points) {
    acc += p.mass * ground_projection(p.position);
    total += p.mass;
  }
  return acc / total;
}

Point2 com_projection(const Posture& posture, const MassModel& masses,
                      const SegmentLengths& lengths) {
  // Left and right partners are added to each other first so that a mirrored
  // posture about y = 0 cancels exactly.
  const auto points = segment_masses(posture, masses, lengths);
  Point2 acc = Point2::Zero();
  double total = 0.0;
  for (std::size_t i = 0; i < 3; ++i) {
    const PointMass& l = points[i];
    const PointMass& r = points[i + 3];
    acc += l.mass * ground_projection(l.position) + r.mass * ground_projection(r.position);
    total += l.mass + r.mass;
  }
  acc += points[6].mass * ground_projection(points[6].position);
  total += points[6].mass;
  return acc / total;
}

double posture_fitness(const Point2& com, const SupportPolygon& polygon, FitnessMode mode) {
  const double dx = com.x() - polygon.centroid.x();
  const double dy = com.y() - polygon.centroid.y();
  if (mode == FitnessMode::Euclidean) return std::sqrt(dx * dx + dy * dy);
  return std::sqrt(dy * dy) + std::sqrt(dx * dx);
}

StabilityReport is_statically_stable(const Posture& posture, const MassModel& masses,
                                     const SegmentLengths& lengths, const PolygonOptions& options) {
  auto require_grounded = [](const Point3& ankle, const char* which) {
    if (ankle.z() > kGroundTolerance)
      throw Error(ErrorKind::SupportFootAirborne, std::string(which) + " support ankle is airborne");
  };
  switch (posture.phase) {
    case SupportPhase::SingleLeft: require_grounded(posture.left.ankle.position, "left"); break;
    case SupportPhase::SingleRight: require_grounded(posture.right.ankle.position, "right"); break;
    case SupportPhase::Double:
      require_grounded(posture.left.ankle.position, "left");
      require_grounded(posture.right.ankle.position, "right");
      break;
  }

  StabilityReport r;
  r.com = com_projection(posture, masses, lengths);
  r.polygon = support_polygon(posture.phase, posture.left.ankle.position,
                              posture.right.ankle.position, lengths, options);
  r.margin = boundary_margin(r.polygon, r.com);
  r.stable = r.margin.margin >= -kContainsTolerance;
  return r;
}

}  // namespace biped
