#include "biped/kinematics.hpp"

#include <algorithm>
#include <cmath>

#include "biped/error.hpp"

namespace biped {

namespace {

constexpr double kReachTolerance = 1e-12;
constexpr double kPlaneTolerance = 1e-9;

// Planar two-link solve: target (px, pz) relative to the hip, z up, leg hanging
// along -z at zero angles.
SagittalSolution planar_two_link(double px, double pz, double femur, double tibia) {
  const double reach = std::hypot(px, pz);
  if (reach > femur + tibia + kReachTolerance || reach < std::abs(femur - tibia) - kReachTolerance)
    throw Error(ErrorKind::Unreachable, "target outside the leg's reach");

  const double cos_knee =
      std::clamp((reach * reach - femur * femur - tibia * tibia) / (2.0 * femur * tibia), -1.0, 1.0);
  SagittalSolution s;
  s.theta_knee = std::acos(cos_knee);
  const double direction = std::atan2(px, -pz);
  s.theta_hip = direction - std::atan2(tibia * std::sin(s.theta_knee), femur + tibia * cos_knee);
  return s;
}

}  // namespace

Matrix3 sagittal_rotation(double theta) {
  const double c = std::cos(theta);
  const double s = std::sin(theta);
  Matrix3 m;
  m << c, 0.0, -s,
       0.0, 1.0, 0.0,
       s, 0.0, c;
  return m;
}

Matrix3 frontal_rotation(double alpha) {
  const double c = std::cos(alpha);
  const double s = std::sin(alpha);
  Matrix3 m;
  m << 1.0, 0.0, 0.0,
       0.0, c, -s,
       0.0, s, c;
  return m;
}

Point3 child_joint_position(const Point3& parent, const JointAngles& angles, double length) {
  if (!(length > 0.0))
    throw Error(ErrorKind::NonPositiveLength, "segment length must be positive");
  return parent + sagittal_rotation(angles.theta) * frontal_rotation(angles.alpha) *
                      Point3(0.0, 0.0, -length);
}

Point3 hip_position(const Point3& pelvis, Side side, const SegmentLengths& lengths) {
  const double half = 0.5 * lengths.inter_hip;
  return pelvis + Point3(0.0, side == Side::Left ? half : -half, 0.0);
}

LegPose forward_leg(const Point3& hip, const LegAngles& angles, const SegmentLengths& lengths) {
  LegPose leg;
  leg.hip = {hip, angles.hip};
  leg.knee = {child_joint_position(hip, angles.hip, lengths.femur_length), angles.knee};
  leg.ankle = {child_joint_position(leg.knee.position, angles.hip + angles.knee, lengths.tibia_length),
               angles.ankle};
  return leg;
}

Posture forward_posture(const Skeleton& skeleton, const Point3& pelvis, const LegAngles& left,
                        const LegAngles& right, SupportPhase phase) {
  Posture p;
  p.pelvis = pelvis;
  p.phase = phase;
  p.left = forward_leg(hip_position(pelvis, Side::Left, skeleton.lengths), left, skeleton.lengths);
  p.right = forward_leg(hip_position(pelvis, Side::Right, skeleton.lengths), right, skeleton.lengths);
  return p;
}

Matrix3 foot_rotation(const LegAngles& a) {
  const JointAngles total = a.hip + a.knee + a.ankle;
  return sagittal_rotation(total.theta) * frontal_rotation(total.alpha);
}

FootPoints foot_points(const Point3& ankle, const LegAngles& angles, const SegmentLengths& lengths) {
  const Matrix3 r = foot_rotation(angles);
  const Point3 half_length = r * Point3(0.5 * lengths.foot_length, 0.0, 0.0);
  return {ankle - half_length, ankle + half_length,
          ankle + r * Point3(0.0, 0.5 * lengths.foot_breadth, 0.0)};
}

SagittalSolution two_link_ik(const Point3& hip, const Point3& target_ankle, double femur,
                             double tibia) {
  if (!(femur > 0.0) || !(tibia > 0.0))
    throw Error(ErrorKind::NonPositiveLength, "segment lengths must be positive");
  if (std::abs(target_ankle.y() - hip.y()) > kPlaneTolerance)
    throw Error(ErrorKind::OutOfPlane, "hip and target are not in the same sagittal plane");
  const Point3 d = target_ankle - hip;
  return planar_two_link(d.x(), d.z(), femur, tibia);
}

LegAngles leg_ik(const Point3& hip, const Point3& target_ankle, double femur, double tibia) {
  if (!(femur > 0.0) || !(tibia > 0.0))
    throw Error(ErrorKind::NonPositiveLength, "segment lengths must be positive");
  const Point3 d = target_ankle - hip;
  const double leg = femur + tibia;
  // With a shared frontal angle the lateral offset is leg * sin(alpha) and the
  // sagittal components shrink by cos(alpha).
  if (std::abs(d.y()) > leg)
    throw Error(ErrorKind::Unreachable, "lateral offset exceeds the leg length");
  const double alpha = std::asin(d.y() / leg);
  const double c = std::cos(alpha);
  const SagittalSolution s = planar_two_link(d.x() / c, d.z() / c, femur, tibia);
  LegAngles a;
  a.hip = {s.theta_hip, alpha};
  a.knee = {s.theta_knee, 0.0};
  return a;
}

}  // namespace biped
