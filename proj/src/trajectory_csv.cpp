#include <charconv>
#include <sstream>

#include "biped/error.hpp"
#include "biped/gaitio.hpp"

namespace biped {

namespace {

constexpr std::array<const char*, 6> kJointColumns{"hip_left", "knee_left", "ankle_left",
                                                   "hip_right", "knee_right", "ankle_right"};

const char* phase_name(SupportPhase p) {
  switch (p) {
    case SupportPhase::SingleLeft: return "single_left";
    case SupportPhase::SingleRight: return "single_right";
    default: return "double";
  }
}

std::vector<std::string_view> split(std::string_view line, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? pos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

template <typename T>
T parse_field(std::string_view field, std::size_t line_no, std::string_view column) {
  T v{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line_no) + ": bad value '" + std::string(field) +
                    "' in column " + std::string(column),
                std::string(column));
  return v;
}

}  // namespace

std::string format_number(double v) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, ptr);
}

std::vector<std::string> trajectory_columns() {
  std::vector<std::string> cols{"step", "via", "phase"};
  for (const char* j : kJointColumns)
    for (const char* f : {"x", "y", "z", "theta", "alpha"}) cols.push_back(std::string(j) + "_" + f);
  for (const char* c : {"pelvis_x", "pelvis_y", "pelvis_z", "com_x", "com_y", "stable", "fitness"})
    cols.emplace_back(c);
  return cols;
}

std::string export_trajectory(const GaitTrajectory& traj) {
  if (traj.records.empty()) throw Error(ErrorKind::EmptyTrajectory, "nothing to export");
  std::string out;
  const auto cols = trajectory_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i) out += ',';
    out += cols[i];
  }
  out += '\n';

  for (const TrajectoryRecord& r : traj.records) {
    out += std::to_string(r.step) + ',' + std::to_string(r.via) + ',' + phase_name(r.phase);
    auto num = [&](double v) {
      out += ',';
      out += format_number(v);
    };
    for (Side side : {Side::Left, Side::Right}) {
      for (Joint j : kJoints) {
        const JointState& js = r.posture.leg(side)[j];
        num(js.position.x());
        num(js.position.y());
        num(js.position.z());
        num(js.angles.theta);
        num(js.angles.alpha);
      }
    }
    num(r.posture.pelvis.x());
    num(r.posture.pelvis.y());
    num(r.posture.pelvis.z());
    num(r.com.x());
    num(r.com.y());
    out += r.stable ? ",1" : ",0";
    num(r.fitness);
    out += '\n';
  }
  return out;
}

GaitTrajectory import_trajectory(std::string_view text) {
  const auto cols = trajectory_columns();
  std::vector<std::string_view> lines = split(text, '\n');
  while (!lines.empty() && lines.back().empty()) lines.pop_back();
  if (lines.empty()) throw Error(ErrorKind::ParseError, "empty trajectory file");

  auto strip = [](std::string_view l) {
    return !l.empty() && l.back() == '\r' ? l.substr(0, l.size() - 1) : l;
  };
  const auto header = split(strip(lines[0]), ',');
  if (header.size() != cols.size())
    throw Error(ErrorKind::ParseError, "trajectory header has " + std::to_string(header.size()) +
                                           " columns, expected " + std::to_string(cols.size()));
  for (std::size_t i = 0; i < cols.size(); ++i)
    if (header[i] != cols[i])
      throw Error(ErrorKind::ParseError, "unexpected column '" + std::string(header[i]) + "'", cols[i]);

  GaitTrajectory traj;
  for (std::size_t ln = 1; ln < lines.size(); ++ln) {
    const auto f = split(strip(lines[ln]), ',');
    if (f.size() != cols.size())
      throw Error(ErrorKind::ParseError, "line " + std::to_string(ln + 1) + ": wrong column count");
    TrajectoryRecord r;
    std::size_t c = 0;
    auto next = [&]() { const std::size_t i = c++; return parse_field<double>(f[i], ln + 1, cols[i]); };
    r.step = parse_field<int>(f[c], ln + 1, cols[c]);
    ++c;
    r.via = parse_field<int>(f[c], ln + 1, cols[c]);
    ++c;
    const std::string_view phase = f[c++];
    if (phase == "double") r.phase = SupportPhase::Double;
    else if (phase == "single_left") r.phase = SupportPhase::SingleLeft;
    else if (phase == "single_right") r.phase = SupportPhase::SingleRight;
    else throw Error(ErrorKind::ParseError, "line " + std::to_string(ln + 1) + ": unknown phase", "phase");
    r.posture.phase = r.phase;
    for (Side side : {Side::Left, Side::Right}) {
      LegPose& leg = r.posture.leg(side);
      for (JointState* js : {&leg.hip, &leg.knee, &leg.ankle}) {
        js->position.x() = next();
        js->position.y() = next();
        js->position.z() = next();
        js->angles.theta = next();
        js->angles.alpha = next();
      }
    }
    r.posture.pelvis.x() = next();
    r.posture.pelvis.y() = next();
    r.posture.pelvis.z() = next();
    r.com.x() = next();
    r.com.y() = next();
    const std::string_view stable = f[c++];
    if (stable != "0" && stable != "1")
      throw Error(ErrorKind::ParseError, "line " + std::to_string(ln + 1) + ": stable must be 0 or 1", "stable");
    r.stable = stable == "1";
    r.fitness = next();
    traj.records.push_back(r);
  }
  return traj;
}

}  // namespace biped
