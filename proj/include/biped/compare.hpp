#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "biped/gaitgen.hpp"

namespace biped {

/// Named channels sampled on a shared time axis normalized to [0, 1].
struct ChannelTable {
  std::vector<double> time;
  std::vector<std::string> names;
  std::vector<std::vector<double>> values;  // values[c][i] pairs with time[i]

  const std::vector<double>* find(std::string_view name) const;
  void add(std::string name, std::vector<double> samples);
};

/// Joint positions and angles (hip/knee/ankle per side), pelvis and COM
/// channels of a generated gait, one sample per record.
ChannelTable trajectory_channels(const GaitTrajectory& trajectory);

/// Evenly spaced times over [0, 1]; a single sample sits at 0.
std::vector<double> normalized_time(std::size_t count);

/// Piecewise-linear interpolation of (time, values) at each grid time; the
/// ends are held constant outside the sampled range.
std::vector<double> resample(const std::vector<double>& time, const std::vector<double>& values,
                             const std::vector<double>& grid);

struct ChannelError {
  std::string name;
  double rmse = 0.0;
  double max_abs = 0.0;
};

struct ComparisonReport {
  std::vector<ChannelError> channels;
  const ChannelError* find(std::string_view name) const;
};

inline constexpr int kDefaultCompareGrid = 101;

/// RMSE and max deviation for every channel present in both tables, after
/// resampling both onto a common grid. Throws EmptyTrajectory or ChannelMismatch.
ComparisonReport compare_trajectories(const ChannelTable& a, const ChannelTable& b,
                                      int grid_points = kDefaultCompareGrid);
ComparisonReport compare_trajectories(const GaitTrajectory& a, const ChannelTable& b,
                                      int grid_points = kDefaultCompareGrid);

}  // namespace biped
