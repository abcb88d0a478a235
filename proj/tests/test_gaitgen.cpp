#include <gtest/gtest.h>

#include <cmath>

#include "biped/error.hpp"
#include "biped/gaitgen.hpp"

using namespace biped;

namespace {

const Skeleton& skeleton() {
  static const Skeleton sk = build_skeleton(1.70, 70);
  return sk;
}

}  // namespace

TEST(Planner, ArcTargets) {
  GaitConfig cfg;
  cfg.first_support = Side::Left;  // right foot swings from (0, -0.16235, 0)
  const GaitState s = initial_state(skeleton(), cfg);
  const ViaPointPlan plan = plan_step_targets(s, cfg, skeleton());
  EXPECT_EQ(plan.swing, Side::Right);
  ASSERT_EQ(plan.points.size(), 5u);
  EXPECT_EQ(plan.points.front().kind, ViaKind::WeightShift);
  EXPECT_EQ(plan.points.back().kind, ViaKind::Landing);
  const double xs[] = {0.0625, 0.125, 0.1875};
  for (int k = 0; k < 3; ++k) {
    const ViaPoint& v = plan.points[k + 1];
    EXPECT_EQ(v.kind, ViaKind::Swing);
    EXPECT_EQ(v.phase, SupportPhase::SingleLeft);
    EXPECT_NEAR(v.swing_ankle.x(), xs[k], 1e-15);
    EXPECT_NEAR(v.swing_ankle.y(), -0.16235, 1e-15);
    EXPECT_GE(v.swing_ankle.z(), 0.0);
  }
  EXPECT_NEAR(plan.points[2].swing_ankle.z(), 0.05, 1e-15);
  const Point3 landing = plan.points.back().swing_ankle;
  EXPECT_NEAR(landing.x(), 0.25, 1e-15);
  EXPECT_NEAR(landing.y(), -0.16235, 1e-15);
  EXPECT_EQ(landing.z(), 0.0);
  for (const ViaPoint& v : plan.points) {
    EXPECT_LE((v.swing_ankle - v.swing_hip).norm(), skeleton().lengths.leg_length);
    EXPECT_LT((forward_leg(v.swing_hip, v.swing_seed, skeleton().lengths).ankle.position - v.swing_ankle).norm(), 1e-9);
  }
}

TEST(Planner, ZeroClearanceSlides) {
  GaitConfig cfg;
  cfg.ground_clearance = 0;
  const ViaPointPlan plan = plan_step_targets(initial_state(skeleton(), cfg), cfg, skeleton());
  for (const ViaPoint& v : plan.points) EXPECT_EQ(v.swing_ankle.z(), 0.0);
}

TEST(Planner, OverlongStepRejected) {
  GaitConfig cfg;
  cfg.step_length = 0.8;
  EXPECT_THROW(plan_step_targets(initial_state(skeleton(), cfg), cfg, skeleton()), Error);
  cfg.step_length = 1.0;  // longer than the leg
  EXPECT_THROW(cfg.validate(skeleton()), Error);
}

TEST(SolvePosture, ConvergesAndPinsSupport) {
  GaitConfig cfg;
  const GaitState s = initial_state(skeleton(), cfg);
  const ViaPointPlan plan = plan_step_targets(s, cfg, skeleton());
  Posture current = s.memory;
  for (std::size_t via = 0; via < plan.points.size(); ++via) {
    const SolveOutcome out = solve_posture(skeleton(), plan, via, current, cfg, {}, 1, 0);
    EXPECT_TRUE(out.converged) << via;
    for (double r : out.residuals) EXPECT_LT(r, 1e-3);
    EXPECT_LT((out.posture.leg(plan.support).ankle.position - plan.support_ankle).norm(), 1e-12);
    EXPECT_LT((out.posture.pelvis - plan.points[via].pelvis).norm(), 2e-3);
    current = out.posture;
  }
  EXPECT_EQ(current.phase, SupportPhase::Double);
  EXPECT_NEAR(current.leg(plan.swing).ankle.position.z(), 0.0, 1e-6);
}

TEST(ValidateStep, AcceptsStandingRejectsLeaning) {
  GaitConfig cfg;
  const GaitState s = initial_state(skeleton(), cfg);
  const StepValidation ok = validate_step(s.memory, skeleton(), cfg);
  EXPECT_TRUE(ok.accepted);
  EXPECT_EQ(ok.reason, RejectReason::None);

  Posture single = s.memory;
  single.phase = SupportPhase::SingleRight;
  const StepValidation bad = validate_step(single, skeleton(), cfg);
  EXPECT_FALSE(bad.accepted);
  EXPECT_EQ(bad.reason, RejectReason::ComOutsidePolygon);
  EXPECT_LT(bad.stability.margin.margin, 0.0);
}

TEST(ValidateStep, LowerFitnessIsCloserToCenter) {
  GaitConfig cfg;
  const Skeleton& sk = skeleton();
  const Posture centered = forward_posture(sk, Point3(0, 0, sk.lengths.leg_length), {}, {});
  Posture leaning = centered;
  leaning.pelvis.x() += 0.05;  // trunk mass ahead of the feet, still inside the hull
  const StepValidation a = validate_step(centered, sk, cfg);
  const StepValidation b = validate_step(leaning, sk, cfg);
  ASSERT_TRUE(a.accepted);
  ASSERT_TRUE(b.accepted);
  EXPECT_NEAR(a.fitness, 0.0, 1e-15);
  EXPECT_NEAR(b.fitness, 0.05 * sk.masses.fraction(Segment::Trunk), 1e-12);
  EXPECT_LT(a.fitness, b.fitness);
}

TEST(CommitStep, ForwardRuleAndToggle) {
  GaitConfig cfg;
  const GaitState s = initial_state(skeleton(), cfg);
  EXPECT_EQ(s.support, Side::Right);
  try {
    commit_step(s, s.memory, {});
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::NotForward);
  }
  Posture landed = s.memory;
  landed.left.ankle.position.x() += 0.25;
  const GaitState next = commit_step(s, landed, {});
  EXPECT_EQ(next.support, Side::Left);
  EXPECT_EQ(next.step, 1);
  EXPECT_EQ(next.memory.left.ankle.position.x(), 0.25);
}

TEST(TransferDynamics, MirrorAndScale) {
  GaitState s;
  s.swing_velocities = {Vec2(0.1, 0.04), Vec2(-0.02, 0.01), Vec2(0, 0)};
  const GaitState t = transfer_particle_dynamics(s, 0.5);
  EXPECT_DOUBLE_EQ(t.carried_velocities[0][0], 0.05);
  EXPECT_DOUBLE_EQ(t.carried_velocities[0][1], -0.02);
  EXPECT_DOUBLE_EQ(t.carried_velocities[1][0], -0.01);
  EXPECT_DOUBLE_EQ(t.carried_velocities[1][1], -0.005);
  const GaitState z = transfer_particle_dynamics(s, 0.0);
  for (const Vec2& v : z.carried_velocities) EXPECT_TRUE((v == 0).all());
}

TEST(GenerateGait, NoStepsIsStanding) {
  GaitConfig cfg;
  cfg.steps = 0;
  const GaitResult r = generate_gait(skeleton(), cfg);
  ASSERT_EQ(r.trajectory.records.size(), 1u);
  EXPECT_FALSE(r.failure);
  EXPECT_TRUE(r.trajectory.records[0].stable);
  EXPECT_EQ(r.trajectory.records[0].phase, SupportPhase::Double);
}

TEST(GenerateGait, DefaultWalkInvariants) {
  GaitConfig cfg;
  const GaitResult r = generate_gait(skeleton(), cfg);
  ASSERT_FALSE(r.failure) << r.failure->reason;
  EXPECT_EQ(r.committed_steps, 8);
  const auto& rec = r.trajectory.records;
  ASSERT_EQ(rec.size(), 1u + 8u * 5u);
  const SegmentLengths& l = skeleton().lengths;
  for (std::size_t i = 0; i < rec.size(); ++i) {
    EXPECT_TRUE(rec[i].stable);
    for (Side s : {Side::Left, Side::Right}) {
      const LegPose& g = rec[i].posture.leg(s);
      EXPECT_NEAR((g.knee.position - g.hip.position).norm(), l.femur_length, 1e-9);
      EXPECT_NEAR((g.ankle.position - g.knee.position).norm(), l.tibia_length, 1e-9);
      EXPECT_GE(g.ankle.position.z(), -1e-6);
    }
    if (i == 0) continue;
    EXPECT_TRUE(rec[i].step > rec[i - 1].step || (rec[i].step == rec[i - 1].step && rec[i].via > rec[i - 1].via));
    EXPECT_GE(rec[i].posture.pelvis.x(), rec[i - 1].posture.pelvis.x());
  }
  EXPECT_GT(rec.back().posture.pelvis.x(), 0.0);
}

TEST(GenerateGait, SameSeedSameWalk) {
  GaitConfig cfg;
  cfg.steps = 4;
  const GaitResult a = generate_gait(skeleton(), cfg);
  const GaitResult b = generate_gait(skeleton(), cfg);
  ASSERT_EQ(a.trajectory.records.size(), b.trajectory.records.size());
  for (std::size_t i = 0; i < a.trajectory.records.size(); ++i) {
    const auto& x = a.trajectory.records[i];
    const auto& y = b.trajectory.records[i];
    EXPECT_EQ(x.posture.left.ankle.position, y.posture.left.ankle.position);
    EXPECT_EQ(x.posture.right.knee.position, y.posture.right.knee.position);
    EXPECT_EQ(x.fitness, y.fitness);
  }
}

TEST(GenerateGait, SegmentPolygonIsInfeasible) {
  GaitConfig cfg;
  cfg.polygon.mode = PolygonMode::AnkleSegment;
  const GaitResult r = generate_gait(skeleton(), cfg);
  ASSERT_TRUE(r.failure);
  for (const TrajectoryRecord& rec : r.trajectory.records) EXPECT_TRUE(rec.stable);
}
