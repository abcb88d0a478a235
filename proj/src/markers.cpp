#include <algorithm>
#include <charconv>
#include <set>

#include "biped/error.hpp"
#include "biped/gaitio.hpp"

namespace biped {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

template <typename T>
T parse(std::string_view field, std::size_t line_no) {
  field = trim(field);
  T v{};
  const auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw Error(ErrorKind::ParseError,
                "line " + std::to_string(line_no) + ": bad number '" + std::string(field) + "'");
  return v;
}

}  // namespace

ChannelTable ReferenceTrajectory::channels() const {
  ChannelTable t;
  const double span = static_cast<double>(cycle_end - cycle_begin);
  for (long f : frames) t.time.push_back(span > 0.0 ? (f - cycle_begin) / span : 0.0);
  for (const auto& [name, points] : markers) {
    for (int axis = 0; axis < 3; ++axis) {
      std::vector<double> v;
      v.reserve(points.size());
      for (const Point3& p : points) v.push_back(p(axis));
      t.add(name + "_" + "xyz"[axis], std::move(v));
    }
  }
  return t;
}

ReferenceTrajectory import_markers(std::string_view text) {
  ReferenceTrajectory ref;
  std::map<std::string, std::map<long, Point3>> rows;
  bool header_seen = false;
  std::size_t line_no = 0;

  while (!text.empty()) {
    const std::size_t nl = text.find('\n');
    const std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty()) continue;
    if (line.front() == '#') {
      const std::string_view body = trim(line.substr(1));
      constexpr std::string_view key = "frame_rate=";
      if (body.starts_with(key)) {
        ref.frame_rate = parse<double>(body.substr(key.size()), line_no);
        if (!(ref.frame_rate > 0.0))
          throw Error(ErrorKind::ParseError, "frame rate must be positive", "frame_rate");
      }
      continue;
    }
    if (!header_seen) {
      if (line != "frame,marker,x,y,z")
        throw Error(ErrorKind::ParseError, "expected header 'frame,marker,x,y,z'");
      header_seen = true;
      continue;
    }
    std::array<std::string_view, 5> f;
    std::string_view rest = line;
    for (std::size_t i = 0; i < 5; ++i) {
      const std::size_t comma = rest.find(',');
      if ((i < 4) == (comma == std::string_view::npos))
        throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": expected 5 fields");
      f[i] = rest.substr(0, comma);
      rest = comma == std::string_view::npos ? std::string_view{} : rest.substr(comma + 1);
    }
    const long frame = parse<long>(f[0], line_no);
    const std::string marker(trim(f[1]));
    if (marker.empty()) throw Error(ErrorKind::ParseError, "line " + std::to_string(line_no) + ": empty marker");
    const Point3 p(parse<double>(f[2], line_no), parse<double>(f[3], line_no), parse<double>(f[4], line_no));
    if (!rows[marker].emplace(frame, p).second)
      throw Error(ErrorKind::NonMonotoneFrames,
                  "duplicate frame " + std::to_string(frame) + " for marker " + marker, marker);
  }
  if (!header_seen) throw Error(ErrorKind::ParseError, "missing header");

  for (std::string_view m : kRequiredMarkers)
    if (!rows.contains(std::string(m)))
      throw Error(ErrorKind::MissingMarker, "required marker '" + std::string(m) + "' absent",
                  std::string(m));

  // Every marker must cover the same contiguous frame range.
  const auto& first = rows.begin()->second;
  for (const auto& [frame, p] : first) ref.frames.push_back(frame);
  for (std::size_t i = 1; i < ref.frames.size(); ++i)
    if (ref.frames[i] != ref.frames[i - 1] + 1)
      throw Error(ErrorKind::NonMonotoneFrames,
                  "gap after frame " + std::to_string(ref.frames[i - 1]), rows.begin()->first);
  for (const auto& [name, series] : rows) {
    if (series.size() != ref.frames.size() ||
        !std::equal(series.begin(), series.end(), ref.frames.begin(),
                    [](const auto& kv, long f) { return kv.first == f; }))
      throw Error(ErrorKind::NonMonotoneFrames, "marker '" + name + "' covers different frames", name);
    auto& pts = ref.markers[name];
    for (const auto& [frame, p] : series) pts.push_back(p);
  }
  ref.cycle_begin = ref.frames.front();
  ref.cycle_end = ref.frames.back();
  return ref;
}

}  // namespace biped
