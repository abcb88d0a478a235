#pragma once

#include "biped/anthro.hpp"
#include "biped/kinematics.hpp"

namespace biped::detail {

/// Ankle angles that bring the foot back parallel to the ground, clamped into
/// the ankle's range.
inline JointAngles flat_foot(const LegAngles& a, const JointLimit& ankle) {
  return {ankle.theta.clamp(-(a.hip.theta + a.knee.theta)),
          ankle.alpha.clamp(-(a.hip.alpha + a.knee.alpha))};
}

/// Closed-form leg from `hip` to `ankle` with a flattened foot.
inline LegAngles closed_form_leg(const Point3& hip, const Point3& ankle, const Skeleton& sk) {
  LegAngles a = leg_ik(hip, ankle, sk.lengths.femur_length, sk.lengths.tibia_length);
  a.ankle = flat_foot(a, sk.limits.ankle);
  return a;
}

inline bool within_limits(const LegAngles& a, const JointLimits& limits, double tol = 1e-9) {
  for (Joint j : kJoints) {
    const JointLimit& l = limits[j];
    const JointAngles& v = a[j];
    if (v.theta < l.theta.min - tol || v.theta > l.theta.max + tol) return false;
    if (v.alpha < l.alpha.min - tol || v.alpha > l.alpha.max + tol) return false;
  }
  return true;
}

}  // namespace biped::detail
