#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "biped/anthro.hpp"
#include "biped/kinematics.hpp"
#include "biped/stability.hpp"
#include "biped/swarm.hpp"

namespace biped {

struct GaitConfig {
  double step_length = 0.25;       // swing-foot advance per half-step, m
  double ground_clearance = 0.05;  // peak swing-ankle height, m
  int via_points_per_step = 3;     // airborne via-points between lift-off and landing
  int steps = 8;                   // n2, half-steps
  int max_retries = 5;
  double residual_tolerance = 1e-3;  // m, per-joint residual accepted at commit
  double transfer_factor = 0.5;
  // Planner: the COM target sits this far (m) from the support-foot center,
  // toward the swing path, and the pelvis rides at this fraction of full reach.
  double com_bias = 0.05;
  double reach_fraction = 0.998;
  Side first_support = Side::Right;
  FitnessMode fitness_mode = FitnessMode::L1;
  PolygonOptions polygon;
  SwarmConfig swarm;
  std::uint64_t seed = 42;

  /// Throws InvalidGaitConfig (key names the field) or InvalidSwarmConfig.
  void validate(const Skeleton& skeleton) const;
  bool operator==(const GaitConfig&) const = default;
};

using JointVelocities = std::array<Vec2, 3>;  // hip, knee, ankle

struct GaitState {
  Posture memory;  // last committed posture
  Side support = Side::Right;
  int step = 0;
  JointVelocities swing_velocities{Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
  JointVelocities carried_velocities{Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
};

/// Zero angles, pelvis at (0, 0, leg_length), double support.
GaitState initial_state(const Skeleton& skeleton, const GaitConfig& cfg);

enum class ViaKind {
  WeightShift,  // both feet planted, pelvis moves the COM over the support foot
  Swing,        // single support, swing foot airborne
  Landing,      // swing foot touches down, double support
};

struct ViaPoint {
  ViaKind kind = ViaKind::Swing;
  SupportPhase phase = SupportPhase::Double;
  Point3 pelvis = Point3::Zero();
  Point3 swing_hip = Point3::Zero();
  Point3 swing_knee = Point3::Zero();   // target
  Point3 swing_ankle = Point3::Zero();  // target
  // Foot orientation target as offsets of toe and lateral points from the ankle.
  Point3 toe_offset = Point3::Zero();
  Point3 lateral_offset = Point3::Zero();
  LegAngles swing_seed;      // closed-form solution reaching the targets
  LegAngles support_angles;  // closed-form support leg keeping its ankle pinned
};

struct ViaPointPlan {
  Side support = Side::Right;
  Side swing = Side::Left;
  Point3 support_ankle = Point3::Zero();
  Point3 swing_start = Point3::Zero();
  std::vector<ViaPoint> points;  // weight shift, airborne via-points, landing
};

/// Lift-advance-land arc for the swing ankle with pelvis targets that keep the
/// planned COM over the support foot. Throws TargetUnreachable.
ViaPointPlan plan_step_targets(const GaitState& state, const GaitConfig& cfg,
                               const Skeleton& skeleton);

struct SolveOutcome {
  Posture posture;
  std::array<double, 3> residuals{0.0, 0.0, 0.0};  // hip, knee, ankle swarms
  JointVelocities velocities{Vec2::Zero(), Vec2::Zero(), Vec2::Zero()};
  int iterations = 0;
  bool converged = true;
};

/// Runs the swing leg's hip, knee and ankle swarms bottom-up through the chain;
/// each swarm starts from the joint angles of `current` and sees the position
/// selected by its parent. The support leg follows the planned pelvis in closed
/// form with its ankle pinned.
SolveOutcome solve_posture(const Skeleton& skeleton, const ViaPointPlan& plan, std::size_t via,
                           const Posture& current, const GaitConfig& cfg,
                           const JointVelocities& initial_velocities, int step, int attempt);

enum class RejectReason { None, ComOutsidePolygon, SupportFootAirborne, DegeneratePolygon, NoConvergence };
std::string to_string(RejectReason r);

struct StepValidation {
  bool accepted = false;
  RejectReason reason = RejectReason::None;
  StabilityReport stability;
  double fitness = 0.0;
};

StepValidation validate_step(const Posture& candidate, const Skeleton& skeleton,
                             const GaitConfig& cfg);

/// Accepts the landed posture: memories replaced, support leg toggled, step
/// counter advanced. Throws NotForward when the swing foot did not advance.
GaitState commit_step(const GaitState& state, const Posture& landed,
                      const JointVelocities& swing_velocities);

/// Mirrors (frontal component negated) and scales the last swing leg's velocities
/// into the initial velocities of the next swing leg.
GaitState transfer_particle_dynamics(const GaitState& state, double factor);

struct TrajectoryRecord {
  int step = 0;
  int via = 0;
  SupportPhase phase = SupportPhase::Double;
  Posture posture;
  Point2 com = Point2::Zero();
  bool stable = false;
  double fitness = 0.0;
  std::array<double, 3> residuals{0.0, 0.0, 0.0};
};

struct GaitTrajectory {
  std::vector<TrajectoryRecord> records;
};

struct StepFailure {
  int step = 0;
  int via = 0;
  std::string reason;
};

struct GaitResult {
  GaitTrajectory trajectory;
  std::optional<StepFailure> failure;  // StepInfeasible; trajectory holds the partial walk
  int committed_steps = 0;
};

GaitResult generate_gait(const Skeleton& skeleton, const GaitConfig& cfg);

}  // namespace biped
