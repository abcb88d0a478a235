#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "biped/error.hpp"
#include "biped/gaitgen.hpp"
#include "leg_solver.hpp"

namespace biped {

namespace {

constexpr int kPelvisIterations = 200;
constexpr double kPelvisTolerance = 1e-13;

// Highest pelvis that keeps both legs within reach_fraction of full extension,
// using the shared-frontal-angle leg geometry.
double pelvis_height(const Point3& pelvis, const Point3& left_ankle, const Point3& right_ankle,
                     const Skeleton& sk, double reach_fraction) {
  const double leg = sk.lengths.leg_length;
  double z = std::numeric_limits<double>::infinity();
  for (Side side : {Side::Left, Side::Right}) {
    const Point3& ankle = side == Side::Left ? left_ankle : right_ankle;
    const Point3 d = ankle - hip_position(pelvis, side, sk.lengths);
    const double lateral = d.y() / leg;
    if (std::abs(lateral) >= 1.0)
      throw Error(ErrorKind::TargetUnreachable, "lateral foot offset exceeds the leg length");
    const double planar = reach_fraction * leg * std::sqrt(1.0 - lateral * lateral);
    const double room = planar * planar - d.x() * d.x();
    if (room <= 0.0)
      throw Error(ErrorKind::TargetUnreachable, "foot lies beyond the leg's reach sphere");
    z = std::min(z, ankle.z() + std::sqrt(room));
  }
  return z;
}

Posture grounded_posture(const Point3& pelvis, const Point3& left_ankle, const Point3& right_ankle,
                         const Skeleton& sk) {
  const LegAngles left =
      detail::closed_form_leg(hip_position(pelvis, Side::Left, sk.lengths), left_ankle, sk);
  const LegAngles right =
      detail::closed_form_leg(hip_position(pelvis, Side::Right, sk.lengths), right_ankle, sk);
  return forward_posture(sk, pelvis, left, right);
}

// Fixed-point search for the pelvis that puts the planned COM on `com_target`,
// never moving the pelvis behind `x_floor`.
Point3 place_pelvis(const Point2& com_target, const Point3& left_ankle, const Point3& right_ankle,
                    double x_floor, const Skeleton& sk, double reach_fraction) {
  Point3 pelvis(std::max(com_target.x(), x_floor), com_target.y(), 0.0);
  for (int i = 0; i < kPelvisIterations; ++i) {
    pelvis.z() = pelvis_height(pelvis, left_ankle, right_ankle, sk, reach_fraction);
    const Posture p = grounded_posture(pelvis, left_ankle, right_ankle, sk);
    const Point2 err = com_target - com_projection(p, sk.masses, sk.lengths);
    const double x_before = pelvis.x();
    pelvis.x() = std::max(pelvis.x() + err.x(), x_floor);
    pelvis.y() += err.y();
    if (std::abs(pelvis.x() - x_before) < kPelvisTolerance && std::abs(err.y()) < kPelvisTolerance)
      break;
  }
  pelvis.z() = pelvis_height(pelvis, left_ankle, right_ankle, sk, reach_fraction);
  return pelvis;
}

const char* joint_name(Joint j) {
  return j == Joint::Hip ? "hip" : (j == Joint::Knee ? "knee" : "ankle");
}

void require_limits(const LegAngles& a, const Skeleton& sk, int via, const char* leg) {
  if (detail::within_limits(a, sk.limits)) return;
  for (Joint j : kJoints) {
    const JointLimit& l = sk.limits[j];
    if (!l.theta.contains(a[j].theta) || !l.alpha.contains(a[j].alpha))
      throw Error(ErrorKind::TargetUnreachable, std::string(leg) + " " + joint_name(j) +
                                                    " outside its joint limits at via-point " +
                                                    std::to_string(via));
  }
}

}  // namespace

ViaPointPlan plan_step_targets(const GaitState& state, const GaitConfig& cfg, const Skeleton& sk) {
  ViaPointPlan plan;
  plan.support = state.support;
  plan.swing = opposite(state.support);
  plan.support_ankle = state.memory.leg(plan.support).ankle.position;
  plan.swing_start = state.memory.leg(plan.swing).ankle.position;

  const int airborne = cfg.via_points_per_step;
  const double s = cfg.step_length;
  const double toward_swing =
      plan.swing_start.x() + 0.5 * s >= plan.support_ankle.x() ? 1.0 : -1.0;
  const Point2 com_target(plan.support_ankle.x() + cfg.com_bias * toward_swing,
                          plan.support_ankle.y());

  double x_floor = state.memory.pelvis.x();
  for (int k = 0; k <= airborne + 1; ++k) {
    ViaPoint vp;
    if (k == 0) {
      vp.kind = ViaKind::WeightShift;
      vp.phase = SupportPhase::Double;
      vp.swing_ankle = plan.swing_start;
    } else if (k == airborne + 1) {
      vp.kind = ViaKind::Landing;
      vp.phase = SupportPhase::Double;
      vp.swing_ankle = Point3(plan.swing_start.x() + s, plan.swing_start.y(), 0.0);
    } else {
      const double u = static_cast<double>(k) / (airborne + 1);
      vp.kind = ViaKind::Swing;
      vp.phase = single_support(plan.support);
      vp.swing_ankle = Point3(plan.swing_start.x() + s * u, plan.swing_start.y(),
                              cfg.ground_clearance * std::sin(std::numbers::pi * u));
    }

    const Point3& left_ankle = plan.swing == Side::Left ? vp.swing_ankle : plan.support_ankle;
    const Point3& right_ankle = plan.swing == Side::Right ? vp.swing_ankle : plan.support_ankle;
    vp.pelvis = place_pelvis(com_target, left_ankle, right_ankle, x_floor, sk, cfg.reach_fraction);
    x_floor = vp.pelvis.x();

    vp.swing_hip = hip_position(vp.pelvis, plan.swing, sk.lengths);
    vp.swing_seed = detail::closed_form_leg(vp.swing_hip, vp.swing_ankle, sk);
    vp.support_angles = detail::closed_form_leg(hip_position(vp.pelvis, plan.support, sk.lengths),
                                                plan.support_ankle, sk);
    require_limits(vp.swing_seed, sk, k, "swing");
    require_limits(vp.support_angles, sk, k, "support");

    const LegPose seeded = forward_leg(vp.swing_hip, vp.swing_seed, sk.lengths);
    vp.swing_knee = seeded.knee.position;
    const FootPoints fp = foot_points(seeded.ankle.position, vp.swing_seed, sk.lengths);
    vp.toe_offset = fp.toe - seeded.ankle.position;
    vp.lateral_offset = fp.lateral - seeded.ankle.position;
    plan.points.push_back(vp);
  }
  return plan;
}

}  // namespace biped
