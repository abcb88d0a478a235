#include <gtest/gtest.h>

#include <cmath>
#include <numeric>

#include "biped/anthro.hpp"
#include "biped/error.hpp"

using namespace biped;

namespace {

void expect_rel(double actual, double expected, double rel = 1e-12) {
  EXPECT_LE(std::abs(actual - expected), rel * std::abs(expected)) << actual << " vs " << expected;
}

ErrorKind kind_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.kind();
  }
  ADD_FAILURE() << "no error thrown";
  return ErrorKind::ParseError;
}

}  // namespace

TEST(SegmentLengths, UnitHeightGivesCoefficients) {
  const SegmentLengths l = segment_lengths(1.0);
  expect_rel(l.foot_length, 0.152);
  expect_rel(l.foot_breadth, 0.055);
  expect_rel(l.tibia_length, 0.246);
  expect_rel(l.leg_length, 0.53);
  expect_rel(l.inter_hip, 0.191);
  expect_rel(l.femur_length, 0.284);
}

TEST(SegmentLengths, Height170) {
  const SegmentLengths l = segment_lengths(1.70);
  expect_rel(l.foot_length, 0.2584);
  expect_rel(l.foot_breadth, 0.0935);
  expect_rel(l.tibia_length, 0.4182);
  expect_rel(l.leg_length, 0.901);
  expect_rel(l.inter_hip, 0.3247);
  expect_rel(l.femur_length, 0.4828);
}

TEST(SegmentLengths, ScalesLinearlyAndLegCloses) {
  for (double h = 0.5; h <= 1.25; h += 0.0625) {
    const SegmentLengths a = segment_lengths(h);
    const SegmentLengths b = segment_lengths(2 * h);
    expect_rel(b.foot_length, 2 * a.foot_length);
    expect_rel(b.foot_breadth, 2 * a.foot_breadth);
    expect_rel(b.tibia_length, 2 * a.tibia_length);
    expect_rel(b.leg_length, 2 * a.leg_length);
    expect_rel(b.inter_hip, 2 * a.inter_hip);
    expect_rel(b.femur_length, 2 * a.femur_length);
    expect_rel(a.femur_length + a.tibia_length, a.leg_length);
  }
}

TEST(SegmentLengths, RejectsBadHeights) {
  EXPECT_EQ(kind_of([] { segment_lengths(0.0); }), ErrorKind::NonPositiveHeight);
  EXPECT_EQ(kind_of([] { segment_lengths(-1.0); }), ErrorKind::NonPositiveHeight);
  EXPECT_EQ(kind_of([] { segment_lengths(170.0); }), ErrorKind::HeightOutOfRange);
  EXPECT_EQ(kind_of([] { segment_lengths(0.49); }), ErrorKind::HeightOutOfRange);
  EXPECT_NO_THROW(segment_lengths(0.5));
  EXPECT_NO_THROW(segment_lengths(2.5));
}

TEST(BuildSkeleton, DefaultsSumToOne) {
  const Skeleton sk = build_skeleton(1.70, 70.0);
  const auto& f = sk.masses.fractions;
  EXPECT_NEAR(std::accumulate(f.begin(), f.end(), 0.0), 1.0, 1e-9);
  EXPECT_DOUBLE_EQ(sk.masses.fraction(Segment::FootLeft), 0.0145);
  EXPECT_DOUBLE_EQ(sk.masses.fraction(Segment::TibiaRight), 0.0465);
  EXPECT_DOUBLE_EQ(sk.masses.fraction(Segment::FemurLeft), 0.100);
  EXPECT_DOUBLE_EQ(sk.masses.fraction(Segment::Trunk), 0.678);
  for (double c : sk.masses.com_locations) EXPECT_EQ(c, 0.5);
  EXPECT_EQ(sk.limits, default_joint_limits());
  EXPECT_DOUBLE_EQ(sk.masses.mass(Segment::Trunk), 0.678 * 70.0);
}

TEST(BuildSkeleton, ExplicitDefaultSetAccepted) {
  SkeletonOverrides o;
  o.fractions = std::array<double, kSegmentCount>{0.0145, 0.0145, 0.0465, 0.0465, 0.100, 0.100, 0.678};
  const Skeleton sk = build_skeleton(1.70, 70.0, o);
  EXPECT_NEAR(std::accumulate(sk.masses.fractions.begin(), sk.masses.fractions.end(), 0.0), 1.0, 1e-12);
}

TEST(BuildSkeleton, RejectsFractionsNotSummingToOne) {
  SkeletonOverrides o;
  o.fractions = std::array<double, kSegmentCount>{0.0145, 0.0145, 0.0465, 0.0465, 0.100, 0.100, 0.578};
  EXPECT_EQ(kind_of([&] { build_skeleton(1.70, 70.0, o); }), ErrorKind::BadMassFractions);
  o.fractions = std::array<double, kSegmentCount>{0.5, 0.5, 0.0, 0.0, 0.0, 0.0, 0.0};
  EXPECT_EQ(kind_of([&] { build_skeleton(1.70, 70.0, o); }), ErrorKind::BadMassFractions);
}

TEST(BuildSkeleton, RejectsBadLimitsAndMass) {
  SkeletonOverrides o;
  JointLimits l = default_joint_limits();
  l.ankle.alpha = {0.1, 0.1};
  o.limits = l;
  EXPECT_EQ(kind_of([&] { build_skeleton(1.70, 70.0, o); }), ErrorKind::BadLimits);
  l = default_joint_limits();
  l.knee.theta.min = -0.1;  // hyperextension
  o.limits = l;
  EXPECT_EQ(kind_of([&] { build_skeleton(1.70, 70.0, o); }), ErrorKind::BadLimits);
  EXPECT_EQ(kind_of([] { build_skeleton(1.70, 0.0); }), ErrorKind::NonPositiveMass);
}

TEST(BuildSkeleton, Deterministic) {
  const Skeleton a = build_skeleton(1.63, 58.0);
  const Skeleton b = build_skeleton(1.63, 58.0);
  EXPECT_EQ(a.lengths, b.lengths);
  EXPECT_EQ(a.masses, b.masses);
  EXPECT_EQ(a.limits, b.limits);
}

TEST(DefaultLimits, Degrees) {
  const JointLimits l = default_joint_limits();
  EXPECT_NEAR(degrees(l.hip.theta.min), -25, 1e-12);
  EXPECT_NEAR(degrees(l.hip.theta.max), 35, 1e-12);
  EXPECT_NEAR(degrees(l.knee.theta.min), 0, 1e-12);
  EXPECT_NEAR(degrees(l.knee.theta.max), 70, 1e-12);
  EXPECT_NEAR(degrees(l.ankle.theta.min), -20, 1e-12);
  EXPECT_NEAR(degrees(l.ankle.theta.max), 20, 1e-12);
  for (Joint j : kJoints) {
    EXPECT_NEAR(degrees(l[j].alpha.min), -15, 1e-12);
    EXPECT_NEAR(degrees(l[j].alpha.max), 15, 1e-12);
  }
}
