#include "biped/gaitgen.hpp"

#include <cmath>
#include <sstream>

#include "biped/error.hpp"
#include "leg_solver.hpp"

namespace biped {

void GaitConfig::validate(const Skeleton& sk) const {
  auto fail = [](const char* key, const std::string& what) {
    throw Error(ErrorKind::InvalidGaitConfig, what, key);
  };
  if (!(step_length > 0.0)) fail("step_length", "step length must be positive");
  if (!(step_length < sk.lengths.leg_length))
    fail("step_length", "step length must be shorter than the leg");
  if (!(ground_clearance >= 0.0)) fail("ground_clearance", "clearance must be non-negative");
  if (via_points_per_step < 2) fail("via_points_per_step", "need at least 2 via-points per step");
  if (steps < 0) fail("steps", "step count must be non-negative");
  if (max_retries < 0) fail("max_retries", "retry count must be non-negative");
  if (!(residual_tolerance > 0.0)) fail("residual_tolerance", "residual tolerance must be positive");
  if (!(transfer_factor >= 0.0)) fail("transfer_factor", "transfer factor must be non-negative");
  if (!(com_bias >= 0.0 && com_bias < 0.5 * sk.lengths.foot_length))
    fail("com_bias", "COM bias must stay inside the half foot length");
  if (!(reach_fraction > 0.0 && reach_fraction <= 1.0))
    fail("reach_fraction", "reach fraction must lie in (0, 1]");
  if (!std::isfinite(polygon.footprint_offset)) fail("footprint_offset", "offset must be finite");
  swarm.validate();
}

std::string to_string(RejectReason r) {
  switch (r) {
    case RejectReason::None: return "None";
    case RejectReason::ComOutsidePolygon: return "ComOutsidePolygon";
    case RejectReason::SupportFootAirborne: return "SupportFootAirborne";
    case RejectReason::DegeneratePolygon: return "DegeneratePolygon";
    case RejectReason::NoConvergence: return "NoConvergence";
  }
  return "Unknown";
}

GaitState initial_state(const Skeleton& sk, const GaitConfig& cfg) {
  GaitState s;
  s.memory = forward_posture(sk, Point3(0.0, 0.0, sk.lengths.leg_length), {}, {},
                             SupportPhase::Double);
  s.support = cfg.first_support;
  return s;
}

namespace {

Vec2 as_vec(const JointAngles& a) { return Vec2(a.theta, a.alpha); }
JointAngles as_angles(const Vec2& v) { return {v(0), v(1)}; }

}  // namespace

SolveOutcome solve_posture(const Skeleton& sk, const ViaPointPlan& plan, std::size_t via,
                           const Posture& current, const GaitConfig& cfg,
                           const JointVelocities& initial_velocities, int step, int attempt) {
  const ViaPoint& vp = plan.points.at(via);
  const SegmentLengths& len = sk.lengths;

  SolveOutcome out;
  out.velocities = initial_velocities;
  Posture& p = out.posture;
  p.pelvis = vp.pelvis;
  p.phase = vp.phase;
  p.leg(plan.support) =
      forward_leg(hip_position(vp.pelvis, plan.support, len), vp.support_angles, len);

  if (vp.kind == ViaKind::WeightShift) {
    p.leg(plan.swing) = forward_leg(vp.swing_hip, vp.swing_seed, len);
    return out;
  }

  const LegPose& from = current.leg(plan.swing);
  auto seed_for = [&](Joint j) {
    return derive_seed(cfg.seed, {static_cast<std::uint64_t>(step), via,
                                  static_cast<std::uint64_t>(attempt),
                                  static_cast<std::uint64_t>(plan.swing),
                                  static_cast<std::uint64_t>(j)});
  };
  auto run = [&](Joint j, const FitnessFn& f) {
    SubSwarm sw = make_subswarm({plan.swing, j}, as_vec(from[j].angles), SearchBox::from(sk.limits[j]),
                                cfg.swarm, seed_for(j), initial_velocities[static_cast<std::size_t>(j)]);
    const SwarmRun r = run_subswarm(sw, f, cfg.swarm);
    out.residuals[static_cast<std::size_t>(j)] = r.best.fitness;
    out.velocities[static_cast<std::size_t>(j)] = r.best.velocity;
    out.iterations += r.iterations;
    return as_angles(r.best.position);
  };

  // Each joint sees the position its parent selected, bottom of the chain last.
  LegAngles angles;
  angles.hip = run(Joint::Hip, [&](const Vec2& x) {
    return local_fitness(child_joint_position(vp.swing_hip, as_angles(x), len.femur_length),
                         vp.swing_knee);
  });
  const Point3 knee = child_joint_position(vp.swing_hip, angles.hip, len.femur_length);
  angles.knee = run(Joint::Knee, [&](const Vec2& x) {
    return local_fitness(
        child_joint_position(knee, angles.hip + as_angles(x), len.tibia_length), vp.swing_ankle);
  });
  angles.ankle = run(Joint::Ankle, [&](const Vec2& x) {
    LegAngles trial = angles;
    trial.ankle = as_angles(x);
    const Matrix3 r = foot_rotation(trial);
    const Point3 toe = r * Point3(0.5 * len.foot_length, 0.0, 0.0);
    const Point3 lateral = r * Point3(0.0, 0.5 * len.foot_breadth, 0.0);
    return std::sqrt((toe - vp.toe_offset).squaredNorm() +
                     (lateral - vp.lateral_offset).squaredNorm());
  });

  p.leg(plan.swing) = forward_leg(vp.swing_hip, angles, len);

  if (vp.kind == ViaKind::Landing) {
    // Touchdown: lower the pelvis by the remaining ankle height so the foot rests
    // on the floor, then re-pin the support leg.
    p.pelvis.z() -= p.leg(plan.swing).ankle.position.z() - vp.swing_ankle.z();
    const Point3 support_hip = hip_position(p.pelvis, plan.support, len);
    p.leg(plan.support) =
        forward_leg(support_hip, detail::closed_form_leg(support_hip, plan.support_ankle, sk), len);
    p.leg(plan.swing) = forward_leg(hip_position(p.pelvis, plan.swing, len), angles, len);
  }

  for (double r : out.residuals) out.converged = out.converged && r <= cfg.residual_tolerance;
  out.converged = out.converged && detail::within_limits(p.leg(plan.support).angles(), sk.limits);
  return out;
}

StepValidation validate_step(const Posture& candidate, const Skeleton& sk, const GaitConfig& cfg) {
  StepValidation v;
  try {
    v.stability = is_statically_stable(candidate, sk.masses, sk.lengths, cfg.polygon);
  } catch (const Error& e) {
    v.reason = e.kind() == ErrorKind::SupportFootAirborne ? RejectReason::SupportFootAirborne
                                                          : RejectReason::DegeneratePolygon;
    return v;
  }
  v.fitness = posture_fitness(v.stability.com, v.stability.polygon, cfg.fitness_mode);
  v.accepted = v.stability.stable;
  v.reason = v.accepted ? RejectReason::None : RejectReason::ComOutsidePolygon;
  return v;
}

GaitState commit_step(const GaitState& state, const Posture& landed,
                      const JointVelocities& swing_velocities) {
  const Side swing = opposite(state.support);
  const double advance =
      landed.leg(swing).ankle.position.x() - state.memory.leg(swing).ankle.position.x();
  if (!(advance > 0.0))
    throw Error(ErrorKind::NotForward, "swing foot advanced " + std::to_string(advance) + " m");
  GaitState next = state;
  next.memory = landed;
  next.support = swing;
  next.step = state.step + 1;
  next.swing_velocities = swing_velocities;
  return next;
}

GaitState transfer_particle_dynamics(const GaitState& state, double factor) {
  GaitState next = state;
  for (std::size_t j = 0; j < next.carried_velocities.size(); ++j) {
    const Vec2& v = state.swing_velocities[j];
    next.carried_velocities[j] = Vec2(factor * v(0), -factor * v(1));
  }
  return next;
}

namespace {

TrajectoryRecord make_record(int step, int via, const Posture& p, const StepValidation& v,
                             const std::array<double, 3>& residuals) {
  TrajectoryRecord r;
  r.step = step;
  r.via = via;
  r.phase = p.phase;
  r.posture = p;
  r.com = v.stability.com;
  r.stable = v.accepted;
  r.fitness = v.fitness;
  r.residuals = residuals;
  return r;
}

std::string describe(const SolveOutcome& o) {
  std::ostringstream s;
  s << "NoConvergence (residuals " << o.residuals[0] << ", " << o.residuals[1] << ", "
    << o.residuals[2] << ")";
  return s.str();
}

std::string describe(const StepValidation& v) {
  std::ostringstream s;
  s << to_string(v.reason);
  if (v.reason == RejectReason::ComOutsidePolygon) s << " (margin " << v.stability.margin.margin << ")";
  return s.str();
}

}  // namespace

GaitResult generate_gait(const Skeleton& sk, const GaitConfig& cfg) {
  cfg.validate(sk);
  GaitResult result;
  auto& records = result.trajectory.records;

  GaitState state = initial_state(sk, cfg);
  const StepValidation standing = validate_step(state.memory, sk, cfg);
  records.push_back(make_record(0, 0, state.memory, standing, {0.0, 0.0, 0.0}));
  if (!standing.accepted) {
    result.failure = StepFailure{0, 0, describe(standing)};
    return result;
  }

  for (int step = 1; step <= cfg.steps; ++step) {
    ViaPointPlan plan;
    try {
      plan = plan_step_targets(state, cfg, sk);
    } catch (const Error& e) {
      result.failure = StepFailure{step, 0, e.what()};
      return result;
    }

    Posture current = state.memory;
    JointVelocities velocities = state.carried_velocities;
    for (std::size_t via = 0; via < plan.points.size(); ++via) {
      const bool searched = plan.points[via].kind != ViaKind::WeightShift;
      std::string reason;
      bool done = false;
      for (int attempt = 0; attempt <= cfg.max_retries && !done; ++attempt) {
        const SolveOutcome out =
            solve_posture(sk, plan, via, current, cfg, velocities, step, attempt);
        if (!out.converged) {
          reason = describe(out);
        } else if (const StepValidation v = validate_step(out.posture, sk, cfg); !v.accepted) {
          reason = describe(v);
        } else {
          records.push_back(make_record(step, static_cast<int>(via), out.posture, v, out.residuals));
          current = out.posture;
          velocities = out.velocities;
          done = true;
        }
        if (!searched) break;  // closed-form via-point: another attempt changes nothing
      }
      if (!done) {
        result.failure = StepFailure{step, static_cast<int>(via), reason};
        return result;
      }
    }

    try {
      state = commit_step(state, current, velocities);
    } catch (const Error& e) {
      result.failure = StepFailure{step, static_cast<int>(plan.points.size()) - 1, e.what()};
      return result;
    }
    state = transfer_particle_dynamics(state, cfg.transfer_factor);
    result.committed_steps = state.step;
  }
  return result;
}

}  // namespace biped
