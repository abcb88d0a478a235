#include <algorithm>
#include <cstdio>
#include <limits>

#include "biped/error.hpp"
#include "biped/gaitio.hpp"

namespace biped {

namespace {

constexpr double kWidth = 800.0;
constexpr double kHeight = 480.0;
constexpr double kLeft = 70.0;
constexpr double kRight = 150.0;
constexpr double kTop = 40.0;
constexpr double kBottom = 50.0;
constexpr int kTicks = 5;
constexpr std::array<const char*, 6> kColors{"#1f77b4", "#d62728", "#2ca02c",
                                             "#9467bd", "#ff7f0e", "#17becf"};

std::string fmt(const char* pattern, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, pattern, v);
  return buf;
}

}  // namespace

std::vector<std::string> select_channels(const ChannelTable& table, std::string_view selector) {
  if (table.find(selector)) return {std::string(selector)};
  std::vector<std::string> out;
  const std::string prefix = std::string(selector) + "_";
  for (const std::string& n : table.names)
    if (n.starts_with(prefix)) out.push_back(n);
  if (out.empty())
    throw Error(ErrorKind::UnknownChannel, "no channel matches '" + std::string(selector) + "'",
                std::string(selector));
  return out;
}

std::string emit_plot(const GaitTrajectory& traj, std::string_view selector) {
  const ChannelTable table = trajectory_channels(traj);
  const std::vector<std::string> names = select_channels(table, selector);
  const std::size_t n = traj.records.size();
  if (n < 2) throw Error(ErrorKind::TooFewRecords, "a plot needs at least 2 records");

  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const std::string& name : names)
    for (double v : *table.find(name)) {
      lo = std::min(lo, v);
      hi = std::max(hi, v);
    }
  if (hi - lo < 1e-12) {
    lo -= 0.5;
    hi += 0.5;
  }

  const double plot_w = kWidth - kLeft - kRight;
  const double plot_h = kHeight - kTop - kBottom;
  auto px = [&](double i) { return kLeft + plot_w * i / static_cast<double>(n - 1); };
  auto py = [&](double v) { return kTop + plot_h * (hi - v) / (hi - lo); };

  std::string svg;
  svg += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"800\" height=\"480\" viewBox=\"0 0 800 480\">\n";
  svg += "<rect width=\"800\" height=\"480\" fill=\"white\"/>\n";
  svg += "<text x=\"400\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"16\">" +
         std::string(selector) + "</text>\n";

  // axes
  svg += "<g stroke=\"black\" stroke-width=\"1\">\n";
  svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kTop + plot_h) + "\" x2=\"" +
         fmt("%.2f", kLeft + plot_w) + "\" y2=\"" + fmt("%.2f", kTop + plot_h) + "\"/>\n";
  svg += "<line x1=\"" + fmt("%.2f", kLeft) + "\" y1=\"" + fmt("%.2f", kTop) + "\" x2=\"" +
         fmt("%.2f", kLeft) + "\" y2=\"" + fmt("%.2f", kTop + plot_h) + "\"/>\n";
  svg += "</g>\n";

  svg += "<g font-family=\"sans-serif\" font-size=\"11\">\n";
  for (int t = 0; t <= kTicks; ++t) {
    const double frac = static_cast<double>(t) / kTicks;
    const double value = lo + frac * (hi - lo);
    const double y = py(value);
    svg += "<line x1=\"" + fmt("%.2f", kLeft - 5) + "\" y1=\"" + fmt("%.2f", y) + "\" x2=\"" +
           fmt("%.2f", kLeft) + "\" y2=\"" + fmt("%.2f", y) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", kLeft - 8) + "\" y=\"" + fmt("%.2f", y + 4) +
           "\" text-anchor=\"end\">" + fmt("%.4g", value) + "</text>\n";

    const double index = frac * static_cast<double>(n - 1);
    const double x = px(index);
    svg += "<line x1=\"" + fmt("%.2f", x) + "\" y1=\"" + fmt("%.2f", kTop + plot_h) + "\" x2=\"" +
           fmt("%.2f", x) + "\" y2=\"" + fmt("%.2f", kTop + plot_h + 5) + "\" stroke=\"black\"/>\n";
    svg += "<text x=\"" + fmt("%.2f", x) + "\" y=\"" + fmt("%.2f", kTop + plot_h + 18) +
           "\" text-anchor=\"middle\">" + fmt("%.4g", index) + "</text>\n";
  }
  svg += "<text x=\"" + fmt("%.2f", kLeft + plot_w / 2) + "\" y=\"" + fmt("%.2f", kHeight - 10) +
         "\" text-anchor=\"middle\">record</text>\n";
  svg += "</g>\n";

  for (std::size_t c = 0; c < names.size(); ++c) {
    const auto& values = *table.find(names[c]);
    const char* color = kColors[c % kColors.size()];
    svg += "<polyline fill=\"none\" stroke=\"" + std::string(color) + "\" stroke-width=\"1.5\" points=\"";
    for (std::size_t i = 0; i < n; ++i) {
      if (i) svg += ' ';
      svg += fmt("%.3f", px(static_cast<double>(i))) + "," + fmt("%.3f", py(values[i]));
    }
    svg += "\"><title>" + names[c] + "</title></polyline>\n";
    const double ly = kTop + 16.0 * static_cast<double>(c);
    svg += "<text x=\"" + fmt("%.2f", kWidth - kRight + 12) + "\" y=\"" + fmt("%.2f", ly + 4) +
           "\" font-family=\"sans-serif\" font-size=\"11\" fill=\"" + color + "\">" + names[c] +
           "</text>\n";
  }
  svg += "</svg>\n";
  return svg;
}

}  // namespace biped
