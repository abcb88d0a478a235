#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/LU>

#include "biped/error.hpp"
#include "biped/kinematics.hpp"
#include "oracles.hpp"

using namespace biped;
constexpr double kPi = std::numbers::pi;

TEST(Rotation, SagittalExamples) {
  EXPECT_TRUE(sagittal_rotation(0).isApprox(Matrix3::Identity(), 0));
  Matrix3 q;
  q << 0, 0, -1, 0, 1, 0, 1, 0, 0;
  EXPECT_LT((sagittal_rotation(kPi / 2) - q).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Rotation, FrontalExamples) {
  EXPECT_TRUE(frontal_rotation(0).isApprox(Matrix3::Identity(), 0));
  Matrix3 q;
  q << 1, 0, 0, 0, 0, -1, 0, 1, 0;
  EXPECT_LT((frontal_rotation(kPi / 2) - q).cwiseAbs().maxCoeff(), 1e-15);
}

TEST(Rotation, OrthogonalProper) {
  std::mt19937_64 gen(7);
  std::uniform_real_distribution<double> u(-2 * kPi, 2 * kPi);
  for (int i = 0; i < 1000; ++i) {
    for (const Matrix3& m : {sagittal_rotation(u(gen)), frontal_rotation(u(gen))}) {
      EXPECT_LT((m.transpose() * m - Matrix3::Identity()).cwiseAbs().maxCoeff(), 1e-12);
      EXPECT_NEAR(m.determinant(), 1.0, 1e-12);
    }
  }
}

TEST(ChildJoint, Examples) {
  const Point3 hip(0, 0, 0.901);
  EXPECT_LT((child_joint_position(hip, {0, 0}, 0.4828) - Point3(0, 0, 0.4182)).norm(), 1e-15);
  EXPECT_LT((child_joint_position(hip, {kPi / 2, 0}, 0.4828) - Point3(0.4828, 0, 0.901)).norm(), 1e-15);
  EXPECT_THROW(child_joint_position(hip, {0, 0}, 0.0), Error);
}

TEST(ChildJoint, MatchesHandExpansionAndPreservesLength) {
  std::mt19937_64 gen(11);
  std::uniform_real_distribution<double> ang(-kPi, kPi), pos(-2, 2), len(0.01, 1.5);
  for (int i = 0; i < 1000; ++i) {
    const Point3 p(pos(gen), pos(gen), pos(gen));
    const double th = ang(gen), al = ang(gen), l = len(gen);
    const Point3 c = child_joint_position(p, {th, al}, l);
    EXPECT_NEAR((c - p).norm(), l, 1e-12);
    const oracle::P3 o = oracle::offset({p.x(), p.y(), p.z()}, oracle::direction(th, al), l);
    EXPECT_NEAR(c.x(), o.x, 1e-12);
    EXPECT_NEAR(c.y(), o.y, 1e-12);
    EXPECT_NEAR(c.z(), o.z, 1e-12);
  }
}

TEST(ForwardPosture, ZeroAnglesStandStraight) {
  const Skeleton sk = build_skeleton(1.70, 70);
  const Posture p = forward_posture(sk, Point3(0, 0, 0.901), {}, {});
  EXPECT_EQ(p.left.ankle.position.z(), 0.901 - sk.lengths.leg_length);
  EXPECT_NEAR(p.left.ankle.position.z(), 0.0, 1e-15);
  EXPECT_EQ(p.left.ankle.position.x(), 0.0);
  EXPECT_EQ(p.left.ankle.position.y(), p.left.hip.position.y());
  EXPECT_NEAR(p.left.hip.position.y(), 0.16235, 1e-15);
  EXPECT_NEAR(p.right.hip.position.y(), -0.16235, 1e-15);
}

TEST(ForwardPosture, InvariantsAndMirrorSymmetry) {
  const Skeleton sk = build_skeleton(1.70, 70);
  const SegmentLengths& l = sk.lengths;
  std::mt19937_64 gen(3);
  std::uniform_real_distribution<double> ang(-0.6, 0.6), pos(-1, 1);
  for (int i = 0; i < 500; ++i) {
    const Point3 pelvis(pos(gen), pos(gen), 0.9 + pos(gen));
    LegAngles left{{ang(gen), ang(gen)}, {ang(gen), ang(gen)}, {ang(gen), ang(gen)}};
    LegAngles right{{ang(gen), ang(gen)}, {ang(gen), ang(gen)}, {ang(gen), ang(gen)}};
    const Posture p = forward_posture(sk, pelvis, left, right);
    for (Side s : {Side::Left, Side::Right}) {
      const LegPose& g = p.leg(s);
      EXPECT_NEAR((g.knee.position - g.hip.position).norm(), l.femur_length, 1e-9);
      EXPECT_NEAR((g.ankle.position - g.knee.position).norm(), l.tibia_length, 1e-9);
      const LegAngles& a = s == Side::Left ? left : right;
      const oracle::Leg o = oracle::chain(
          {g.hip.position.x(), g.hip.position.y(), g.hip.position.z()},
          {a.hip.theta, a.hip.alpha, a.knee.theta, a.knee.alpha, a.ankle.theta, a.ankle.alpha},
          l.femur_length, l.tibia_length, l.foot_length);
      EXPECT_NEAR(g.ankle.position.x(), o.ankle.x, 1e-12);
      EXPECT_NEAR(g.ankle.position.y(), o.ankle.y, 1e-12);
      EXPECT_NEAR(g.ankle.position.z(), o.ankle.z, 1e-12);
      const FootPoints fp = foot_points(g.ankle.position, a, l);
      EXPECT_NEAR(fp.toe.x(), o.toe.x, 1e-12);
      EXPECT_NEAR(fp.toe.z(), o.toe.z, 1e-12);
      EXPECT_NEAR(fp.heel.y(), o.heel.y, 1e-12);
    }
    EXPECT_NEAR((p.left.hip.position - p.right.hip.position).norm(), l.inter_hip, 1e-9);

    // Mirror: same sagittal angles, negated frontal angles.
    LegAngles mirrored = left;
    for (Joint j : kJoints) mirrored[j].alpha = -left[j].alpha;
    const Posture m = forward_posture(sk, pelvis, left, mirrored);
    for (Joint j : kJoints) {
      const Point3 a = m.left[j].position, b = m.right[j].position;
      EXPECT_NEAR(a.x(), b.x(), 1e-12);
      EXPECT_NEAR(a.z(), b.z(), 1e-12);
      EXPECT_NEAR(a.y() - pelvis.y(), pelvis.y() - b.y(), 1e-12);
    }
  }
}

TEST(TwoLinkIk, Examples) {
  const Point3 hip(0, 0, 0.901);
  const SagittalSolution s = two_link_ik(hip, Point3(0, 0, 0), 0.4828, 0.4182);
  EXPECT_NEAR(s.theta_hip, 0.0, 1e-7);
  EXPECT_NEAR(s.theta_knee, 0.0, 1e-7);

  try {
    two_link_ik(hip, Point3(0, 0, -0.1), 0.4828, 0.4182);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unreachable);
  }
  try {
    two_link_ik(hip, Point3(0, 0.01, 0.2), 0.4828, 0.4182);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::OutOfPlane);
  }
  try {
    two_link_ik(hip, Point3(0, 0, 0.9), 0.4828, 0.4182);  // closer than |femur - tibia|
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::Unreachable);
  }

  const SagittalSolution t = two_link_ik(hip, Point3(0.2, 0, 0.2), 0.4828, 0.4182);
  EXPECT_GE(t.theta_knee, 0.0);
  const oracle::P2 a = oracle::planar_ankle(0, 0.901, t.theta_hip, t.theta_knee, 0.4828, 0.4182);
  EXPECT_NEAR(a.x, 0.2, 1e-9);
  EXPECT_NEAR(a.y, 0.2, 1e-9);
}

TEST(TwoLinkIk, RoundTripInLimits) {
  const Skeleton sk = build_skeleton(1.70, 70);
  const double lf = sk.lengths.femur_length, lt = sk.lengths.tibia_length;
  std::mt19937_64 gen(5);
  std::uniform_real_distribution<double> th(sk.limits.hip.theta.min, sk.limits.hip.theta.max);
  std::uniform_real_distribution<double> tk(0.01, sk.limits.knee.theta.max);
  const Point3 hip(0.1, -0.16235, 0.901);
  for (int i = 0; i < 1000; ++i) {
    const double a = th(gen), b = tk(gen);
    const oracle::P2 target = oracle::planar_ankle(hip.x(), hip.z(), a, b, lf, lt);
    const SagittalSolution s = two_link_ik(hip, Point3(target.x, hip.y(), target.y), lf, lt);
    EXPECT_NEAR(s.theta_hip, a, 1e-9);
    EXPECT_NEAR(s.theta_knee, b, 1e-9);
    const LegPose leg = forward_leg(hip, {{s.theta_hip, 0}, {s.theta_knee, 0}, {}}, sk.lengths);
    EXPECT_NEAR(leg.ankle.position.x(), target.x, 1e-9);
    EXPECT_NEAR(leg.ankle.position.z(), target.y, 1e-9);
  }
}

TEST(LegIk, ReachesLateralTargets) {
  const Skeleton sk = build_skeleton(1.70, 70);
  std::mt19937_64 gen(9);
  std::uniform_real_distribution<double> th(-0.3, 0.5), tk(0.05, 1.0), al(-0.2, 0.2);
  const Point3 hip(0, 0.16235, 0.9);
  for (int i = 0; i < 500; ++i) {
    const LegAngles truth{{th(gen), al(gen)}, {tk(gen), 0}, {}};
    const Point3 target = forward_leg(hip, truth, sk.lengths).ankle.position;
    const LegAngles s = leg_ik(hip, target, sk.lengths.femur_length, sk.lengths.tibia_length);
    EXPECT_EQ(s.knee.alpha, 0.0);
    EXPECT_GE(s.knee.theta, 0.0);
    EXPECT_LT((forward_leg(hip, s, sk.lengths).ankle.position - target).norm(), 1e-9);
  }
}
