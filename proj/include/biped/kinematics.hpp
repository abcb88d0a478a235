#pragma once

#include <Eigen/Core>

#include "biped/anthro.hpp"

namespace biped {

// World frame: x forward, y lateral (left positive), z up. Ground is z = 0.
using Point3 = Eigen::Vector3d;
using Matrix3 = Eigen::Matrix3d;

/// Joint rotation pair: theta in the sagittal plane, alpha in the frontal plane.
struct JointAngles {
  double theta = 0.0;
  double alpha = 0.0;

  JointAngles operator+(const JointAngles& o) const { return {theta + o.theta, alpha + o.alpha}; }
  bool operator==(const JointAngles&) const = default;
};

enum class Side { Left, Right };
inline Side opposite(Side s) { return s == Side::Left ? Side::Right : Side::Left; }

enum class SupportPhase { Double, SingleLeft, SingleRight };

inline SupportPhase single_support(Side support) {
  return support == Side::Left ? SupportPhase::SingleLeft : SupportPhase::SingleRight;
}

/// Relative angles of one leg; each joint is expressed against its parent.
struct LegAngles {
  JointAngles hip;
  JointAngles knee;
  JointAngles ankle;

  const JointAngles& operator[](Joint j) const {
    return j == Joint::Hip ? hip : (j == Joint::Knee ? knee : ankle);
  }
  JointAngles& operator[](Joint j) { return j == Joint::Hip ? hip : (j == Joint::Knee ? knee : ankle); }
};

struct JointState {
  Point3 position = Point3::Zero();
  JointAngles angles;
};

struct LegPose {
  JointState hip;
  JointState knee;
  JointState ankle;

  const JointState& operator[](Joint j) const {
    return j == Joint::Hip ? hip : (j == Joint::Knee ? knee : ankle);
  }
  LegAngles angles() const { return {hip.angles, knee.angles, ankle.angles}; }
};

struct Posture {
  LegPose left;
  LegPose right;
  Point3 pelvis = Point3::Zero();
  SupportPhase phase = SupportPhase::Double;

  const LegPose& leg(Side s) const { return s == Side::Left ? left : right; }
  LegPose& leg(Side s) { return s == Side::Left ? left : right; }
};

Matrix3 sagittal_rotation(double theta);
Matrix3 frontal_rotation(double alpha);

/// parent + M_sg(theta) * M_ft(alpha) * (0, 0, -l). Throws NonPositiveLength.
Point3 child_joint_position(const Point3& parent, const JointAngles& angles, double length);

/// Hip joint location for the given side: pelvis +/- half the inter-hip distance along y.
Point3 hip_position(const Point3& pelvis, Side side, const SegmentLengths& lengths);

/// Chains pelvis -> hips -> knees -> ankles, composing relative angles per plane.
Posture forward_posture(const Skeleton& skeleton, const Point3& pelvis, const LegAngles& left,
                        const LegAngles& right, SupportPhase phase = SupportPhase::Double);

LegPose forward_leg(const Point3& hip, const LegAngles& angles, const SegmentLengths& lengths);

/// Absolute rotation of the foot: sums of hip, knee and ankle angles per plane.
Matrix3 foot_rotation(const LegAngles& angles);

/// Reference points of the foot: heel and toe sit fl/2 behind and ahead of the
/// ankle along the foot axis; `lateral` sits fb/2 to the side.
struct FootPoints {
  Point3 heel;
  Point3 toe;
  Point3 lateral;
};
FootPoints foot_points(const Point3& ankle, const LegAngles& angles, const SegmentLengths& lengths);

struct SagittalSolution {
  double theta_hip = 0.0;
  double theta_knee = 0.0;
};

/// Closed-form two-link solve in the sagittal plane through the hip, knee flexion
/// only (theta_knee >= 0). Throws Unreachable / OutOfPlane / NonPositiveLength.
SagittalSolution two_link_ik(const Point3& hip, const Point3& target_ankle, double femur,
                             double tibia);

/// Three-dimensional leg solve that shares one frontal angle between thigh and
/// shank (knee alpha = 0); ankle angles are left at zero. Throws Unreachable.
LegAngles leg_ik(const Point3& hip, const Point3& target_ankle, double femur, double tibia);

}  // namespace biped
