#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "biped/compare.hpp"
#include "biped/error.hpp"

using namespace biped;

namespace {

const GaitTrajectory& walk() {
  static const GaitTrajectory t = [] {
    GaitConfig cfg;
    cfg.steps = 2;
    return generate_gait(build_skeleton(1.70, 70), cfg).trajectory;
  }();
  return t;
}

ChannelTable sine_table(std::size_t n, double offset = 0.0) {
  ChannelTable t;
  t.time = normalized_time(n);
  std::vector<double> a, b;
  for (double s : t.time) {
    a.push_back(std::sin(2 * std::numbers::pi * s) + offset);
    b.push_back(s * s);
  }
  t.add("wave", a);
  t.add("ramp", b);
  return t;
}

}  // namespace

TEST(Compare, SelfIsZero) {
  const ComparisonReport r = compare_trajectories(walk(), trajectory_channels(walk()));
  EXPECT_EQ(r.channels.size(), 6u * 5u + 5u);
  for (const ChannelError& c : r.channels) {
    EXPECT_EQ(c.rmse, 0.0) << c.name;
    EXPECT_EQ(c.max_abs, 0.0) << c.name;
  }
}

TEST(Compare, ConstantOffset) {
  ChannelTable shifted = trajectory_channels(walk());
  const double d = 0.037;
  for (double& v : shifted.values[0]) v += d;
  const ComparisonReport r = compare_trajectories(walk(), shifted);
  EXPECT_NEAR(r.find(shifted.names[0])->rmse, d, 1e-12);
  EXPECT_NEAR(r.find(shifted.names[0])->max_abs, d, 1e-12);
  EXPECT_EQ(r.find("com_x")->rmse, 0.0);
}

TEST(Compare, DensificationBarelyMatters) {
  // Doubling the sample density of a gait by inserting interval midpoints.
  const ChannelTable base = trajectory_channels(walk());
  ChannelTable dense;
  for (std::size_t i = 0; i < base.time.size(); ++i) {
    dense.time.push_back(base.time[i]);
    if (i + 1 < base.time.size()) dense.time.push_back(0.5 * (base.time[i] + base.time[i + 1]));
  }
  for (std::size_t c = 0; c < base.names.size(); ++c) {
    std::vector<double> v;
    for (std::size_t i = 0; i < base.time.size(); ++i) {
      v.push_back(base.values[c][i]);
      if (i + 1 < base.time.size()) v.push_back(0.5 * (base.values[c][i] + base.values[c][i + 1]));
    }
    dense.add(base.names[c], v);
  }
  ChannelTable shifted = base;
  for (auto& ch : shifted.values)
    for (std::size_t i = 0; i < ch.size(); ++i) ch[i] += 0.01 * std::sin(7.0 * static_cast<double>(i));
  const ComparisonReport a = compare_trajectories(base, shifted);
  const ComparisonReport b = compare_trajectories(dense, shifted);
  for (const ChannelError& c : a.channels) EXPECT_LT(std::abs(c.rmse - b.find(c.name)->rmse), 1e-6) << c.name;

  // resampling a linear channel is exact, so densifying changes nothing
  ChannelTable lin, lin2;
  lin.time = normalized_time(11);
  lin2.time = normalized_time(21);
  std::vector<double> v, v2;
  for (double s : lin.time) v.push_back(3 * s - 1);
  for (double s : lin2.time) v2.push_back(3 * s - 1);
  lin.add("line", v);
  lin2.add("line", v2);
  const ChannelTable off = [&] {
    ChannelTable t = lin;
    for (double& x : t.values[0]) x += 0.25;
    return t;
  }();
  EXPECT_LT(std::abs(compare_trajectories(lin, off).channels[0].rmse - compare_trajectories(lin2, off).channels[0].rmse), 1e-6);
}

TEST(Compare, Resample) {
  const std::vector<double> t{0, 0.5, 1}, v{0, 1, 0};
  const auto r = resample(t, v, {0, 0.25, 0.5, 0.75, 1});
  EXPECT_EQ(r, (std::vector<double>{0, 0.5, 1, 0.5, 0}));
  EXPECT_EQ(normalized_time(1), std::vector<double>{0});
  EXPECT_EQ(normalized_time(3), (std::vector<double>{0, 0.5, 1}));
}

TEST(Compare, Errors) {
  EXPECT_THROW(compare_trajectories(ChannelTable{}, sine_table(5)), Error);
  ChannelTable other;
  other.time = normalized_time(3);
  other.add("elbow", {1, 2, 3});
  try {
    compare_trajectories(sine_table(5), other);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.kind(), ErrorKind::ChannelMismatch);
  }
}
