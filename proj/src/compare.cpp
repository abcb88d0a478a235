#include "biped/compare.hpp"

#include <algorithm>
#include <cmath>

#include "biped/error.hpp"

namespace biped {

const std::vector<double>* ChannelTable::find(std::string_view name) const {
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return &values[i];
  return nullptr;
}

void ChannelTable::add(std::string name, std::vector<double> samples) {
  names.push_back(std::move(name));
  values.push_back(std::move(samples));
}

const ChannelError* ComparisonReport::find(std::string_view name) const {
  for (const ChannelError& c : channels)
    if (c.name == name) return &c;
  return nullptr;
}

std::vector<double> normalized_time(std::size_t count) {
  std::vector<double> t(count, 0.0);
  if (count > 1)
    for (std::size_t i = 0; i < count; ++i) t[i] = static_cast<double>(i) / (count - 1);
  return t;
}

ChannelTable trajectory_channels(const GaitTrajectory& traj) {
  ChannelTable table;
  const auto& recs = traj.records;
  table.time = normalized_time(recs.size());

  auto channel = [&](std::string name, auto&& get) {
    std::vector<double> v;
    v.reserve(recs.size());
    for (const TrajectoryRecord& r : recs) v.push_back(get(r));
    table.add(std::move(name), std::move(v));
  };

  for (Side side : {Side::Left, Side::Right}) {
    const char* suffix = side == Side::Left ? "_left" : "_right";
    for (Joint j : kJoints) {
      const std::string base =
          std::string(j == Joint::Hip ? "hip" : (j == Joint::Knee ? "knee" : "ankle")) + suffix;
      for (int axis = 0; axis < 3; ++axis)
        channel(base + "_" + "xyz"[axis],
                [&](const TrajectoryRecord& r) { return r.posture.leg(side)[j].position(axis); });
      channel(base + "_theta",
              [&](const TrajectoryRecord& r) { return r.posture.leg(side)[j].angles.theta; });
      channel(base + "_alpha",
              [&](const TrajectoryRecord& r) { return r.posture.leg(side)[j].angles.alpha; });
    }
  }
  for (int axis = 0; axis < 3; ++axis)
    channel(std::string("pelvis_") + "xyz"[axis],
            [&](const TrajectoryRecord& r) { return r.posture.pelvis(axis); });
  channel("com_x", [](const TrajectoryRecord& r) { return r.com.x(); });
  channel("com_y", [](const TrajectoryRecord& r) { return r.com.y(); });
  return table;
}

std::vector<double> resample(const std::vector<double>& time, const std::vector<double>& values,
                             const std::vector<double>& grid) {
  std::vector<double> out;
  out.reserve(grid.size());
  for (double t : grid) {
    if (time.size() == 1 || t <= time.front()) {
      out.push_back(values.front());
      continue;
    }
    if (t >= time.back()) {
      out.push_back(values.back());
      continue;
    }
    const auto hi = std::upper_bound(time.begin(), time.end(), t);
    const std::size_t i = static_cast<std::size_t>(hi - time.begin());
    const double w = (t - time[i - 1]) / (time[i] - time[i - 1]);
    out.push_back(values[i - 1] + w * (values[i] - values[i - 1]));
  }
  return out;
}

ComparisonReport compare_trajectories(const ChannelTable& a, const ChannelTable& b, int grid_points) {
  if (a.time.empty() || b.time.empty())
    throw Error(ErrorKind::EmptyTrajectory, "cannot compare an empty trajectory");
  const std::vector<double> grid = normalized_time(static_cast<std::size_t>(std::max(grid_points, 2)));

  ComparisonReport report;
  for (std::size_t c = 0; c < a.names.size(); ++c) {
    const std::vector<double>* other = b.find(a.names[c]);
    if (!other) continue;
    const std::vector<double> va = resample(a.time, a.values[c], grid);
    const std::vector<double> vb = resample(b.time, *other, grid);
    ChannelError e{a.names[c], 0.0, 0.0};
    double sq = 0.0;
    for (std::size_t i = 0; i < grid.size(); ++i) {
      const double d = va[i] - vb[i];
      sq += d * d;
      e.max_abs = std::max(e.max_abs, std::abs(d));
    }
    e.rmse = std::sqrt(sq / grid.size());
    report.channels.push_back(e);
  }
  if (report.channels.empty())
    throw Error(ErrorKind::ChannelMismatch, "the trajectories share no channel");
  return report;
}

ComparisonReport compare_trajectories(const GaitTrajectory& a, const ChannelTable& b, int grid_points) {
  if (a.records.empty()) throw Error(ErrorKind::EmptyTrajectory, "cannot compare an empty trajectory");
  return compare_trajectories(trajectory_channels(a), b, grid_points);
}

}  // namespace biped
