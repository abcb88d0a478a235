#include <json.hpp>

#include "biped/error.hpp"
#include "biped/gaitio.hpp"

namespace biped {

using nlohmann::json;

namespace {

constexpr std::array<const char*, kSegmentCount> kSegmentKeys{
    "foot_left", "foot_right", "tibia_left", "tibia_right", "femur_left", "femur_right", "trunk"};
constexpr std::array<const char*, 3> kJointKeys{"hip", "knee", "ankle"};

[[noreturn]] void schema_error(const std::string& key, const std::string& what) {
  throw Error(ErrorKind::SchemaError, key + ": " + what, key);
}

void reject_unknown(const json& obj, std::initializer_list<const char*> allowed,
                    const std::string& prefix) {
  for (const auto& [key, value] : obj.items()) {
    bool known = false;
    for (const char* a : allowed) known = known || key == a;
    if (!known) schema_error(prefix + key, "unknown key");
  }
}

const json& require_object(const json& j, const std::string& key) {
  if (!j.is_object()) schema_error(key, "expected an object");
  return j;
}

double number(const json& j, const std::string& key) {
  if (!j.is_number()) schema_error(key, "expected a number");
  return j.get<double>();
}

int integer(const json& j, const std::string& key) {
  if (!j.is_number_integer()) schema_error(key, "expected an integer");
  const auto v = j.get<long long>();
  if (v < std::numeric_limits<int>::min() || v > std::numeric_limits<int>::max())
    schema_error(key, "integer out of range");
  return static_cast<int>(v);
}

template <typename T>
void read(const json& obj, const char* name, T& out, const std::string& prefix = {}) {
  const auto it = obj.find(name);
  if (it == obj.end()) return;
  const std::string key = prefix + name;
  if constexpr (std::is_same_v<T, double>) {
    out = number(*it, key);
  } else if constexpr (std::is_same_v<T, int>) {
    out = integer(*it, key);
  } else if constexpr (std::is_same_v<T, bool>) {
    if (!it->is_boolean()) schema_error(key, "expected a boolean");
    out = it->template get<bool>();
  } else if constexpr (std::is_same_v<T, std::uint64_t>) {
    if (!it->is_number_unsigned()) schema_error(key, "expected a non-negative integer");
    out = it->template get<std::uint64_t>();
  }
}

std::string string_value(const json& j, const std::string& key) {
  if (!j.is_string()) schema_error(key, "expected a string");
  return j.get<std::string>();
}

std::array<double, kSegmentCount> segment_table(const json& j, const std::string& key) {
  require_object(j, key);
  std::array<double, kSegmentCount> out{};
  for (const auto& [name, value] : j.items()) {
    bool known = false;
    for (const char* s : kSegmentKeys) known = known || name == s;
    if (!known) schema_error(key + "." + name, "unknown segment");
  }
  for (std::size_t i = 0; i < kSegmentCount; ++i) {
    const auto it = j.find(kSegmentKeys[i]);
    if (it == j.end()) schema_error(key + "." + kSegmentKeys[i], "missing segment");
    out[i] = number(*it, key + "." + kSegmentKeys[i]);
  }
  return out;
}

JointRange range(const json& j, const std::string& key) {
  if (!j.is_array() || j.size() != 2) schema_error(key, "expected [min, max]");
  return {number(j[0], key), number(j[1], key)};
}

JointLimits limits_table(const json& j, const std::string& key) {
  require_object(j, key);
  reject_unknown(j, {"hip", "knee", "ankle"}, key + ".");
  JointLimits limits = default_joint_limits();
  JointLimit* slots[] = {&limits.hip, &limits.knee, &limits.ankle};
  for (std::size_t i = 0; i < 3; ++i) {
    const auto it = j.find(kJointKeys[i]);
    if (it == j.end()) continue;
    const std::string jk = key + "." + kJointKeys[i];
    require_object(*it, jk);
    reject_unknown(*it, {"theta", "alpha"}, jk + ".");
    if (it->contains("theta")) slots[i]->theta = range((*it)["theta"], jk + ".theta");
    if (it->contains("alpha")) slots[i]->alpha = range((*it)["alpha"], jk + ".alpha");
  }
  return limits;
}

json segment_json(const std::array<double, kSegmentCount>& v) {
  json j = json::object();
  for (std::size_t i = 0; i < kSegmentCount; ++i) j[kSegmentKeys[i]] = v[i];
  return j;
}

json limits_json(const JointLimits& l) {
  json j = json::object();
  const JointLimit* slots[] = {&l.hip, &l.knee, &l.ankle};
  for (std::size_t i = 0; i < 3; ++i)
    j[kJointKeys[i]] = {{"theta", {slots[i]->theta.min, slots[i]->theta.max}},
                        {"alpha", {slots[i]->alpha.min, slots[i]->alpha.max}}};
  return j;
}

}  // namespace

Skeleton RunConfig::skeleton() const {
  SkeletonOverrides o;
  o.fractions = mass_fractions;
  o.com_locations = com_locations;
  o.limits = joint_limits;
  return build_skeleton(height, mass, o);
}

namespace {

[[noreturn]] void invariant(const std::string& key, const Error& e) {
  throw Error(ErrorKind::InvariantError, e.what(), key);
}

}  // namespace

void validate_config(const RunConfig& cfg) {
  Skeleton sk;
  try {
    segment_lengths(cfg.height);
  } catch (const Error& e) {
    invariant("height", e);
  }
  try {
    sk = cfg.skeleton();
  } catch (const Error& e) {
    switch (e.kind()) {
      case ErrorKind::NonPositiveMass: invariant("mass", e);
      case ErrorKind::BadLimits: invariant("joint_limits", e);
      default: invariant(e.key().empty() ? "mass_fractions" : e.key(), e);
    }
  }
  try {
    cfg.gait.validate(sk);
  } catch (const Error& e) {
    invariant(e.kind() == ErrorKind::InvalidSwarmConfig ? "swarm." + e.key() : e.key(), e);
  }
}

RunConfig load_config(std::string_view text) {
  json root;
  try {
    root = json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw Error(ErrorKind::ParseError, e.what());
  }
  if (!root.is_object()) schema_error("", "top level must be an object");
  reject_unknown(root,
                 {"height", "mass", "seed", "steps", "step_length", "ground_clearance",
                  "via_points_per_step", "max_retries", "residual_tolerance", "transfer_factor",
                  "com_bias", "reach_fraction", "first_support", "fitness_mode", "polygon_mode",
                  "footprint_offset", "swarm", "mass_fractions", "com_locations", "joint_limits"},
                 "");

  RunConfig cfg;
  GaitConfig& g = cfg.gait;
  read(root, "height", cfg.height);
  read(root, "mass", cfg.mass);
  read(root, "seed", g.seed);
  read(root, "steps", g.steps);
  read(root, "step_length", g.step_length);
  read(root, "ground_clearance", g.ground_clearance);
  read(root, "via_points_per_step", g.via_points_per_step);
  read(root, "max_retries", g.max_retries);
  read(root, "residual_tolerance", g.residual_tolerance);
  read(root, "transfer_factor", g.transfer_factor);
  read(root, "com_bias", g.com_bias);
  read(root, "reach_fraction", g.reach_fraction);
  read(root, "footprint_offset", g.polygon.footprint_offset);

  if (root.contains("first_support")) {
    const std::string v = string_value(root["first_support"], "first_support");
    if (v == "left") g.first_support = Side::Left;
    else if (v == "right") g.first_support = Side::Right;
    else schema_error("first_support", "expected \"left\" or \"right\"");
  }
  if (root.contains("fitness_mode")) {
    const std::string v = string_value(root["fitness_mode"], "fitness_mode");
    if (v == "l1") g.fitness_mode = FitnessMode::L1;
    else if (v == "euclid") g.fitness_mode = FitnessMode::Euclidean;
    else schema_error("fitness_mode", "expected \"l1\" or \"euclid\"");
  }
  if (root.contains("polygon_mode")) {
    const std::string v = string_value(root["polygon_mode"], "polygon_mode");
    if (v == "footprint") g.polygon.mode = PolygonMode::Footprint;
    else if (v == "ankle_segment") g.polygon.mode = PolygonMode::AnkleSegment;
    else schema_error("polygon_mode", "expected \"footprint\" or \"ankle_segment\"");
  }
  if (root.contains("swarm")) {
    const json& s = require_object(root["swarm"], "swarm");
    reject_unknown(s,
                   {"c1", "c2", "particle_count", "n1", "velocity_clamp", "init_radius",
                    "convergence_eps", "parallel"},
                   "swarm.");
    read(s, "c1", g.swarm.c1, "swarm.");
    read(s, "c2", g.swarm.c2, "swarm.");
    read(s, "particle_count", g.swarm.particle_count, "swarm.");
    read(s, "n1", g.swarm.max_iterations, "swarm.");
    read(s, "velocity_clamp", g.swarm.velocity_clamp, "swarm.");
    read(s, "init_radius", g.swarm.init_radius, "swarm.");
    read(s, "convergence_eps", g.swarm.convergence_eps, "swarm.");
    read(s, "parallel", g.swarm.parallel, "swarm.");
  }
  if (root.contains("mass_fractions"))
    cfg.mass_fractions = segment_table(root["mass_fractions"], "mass_fractions");
  if (root.contains("com_locations"))
    cfg.com_locations = segment_table(root["com_locations"], "com_locations");
  if (root.contains("joint_limits"))
    cfg.joint_limits = limits_table(root["joint_limits"], "joint_limits");

  validate_config(cfg);
  return cfg;
}

std::string dump_config(const RunConfig& cfg) {
  const GaitConfig& g = cfg.gait;
  json j = {
      {"height", cfg.height},
      {"mass", cfg.mass},
      {"seed", g.seed},
      {"steps", g.steps},
      {"step_length", g.step_length},
      {"ground_clearance", g.ground_clearance},
      {"via_points_per_step", g.via_points_per_step},
      {"max_retries", g.max_retries},
      {"residual_tolerance", g.residual_tolerance},
      {"transfer_factor", g.transfer_factor},
      {"com_bias", g.com_bias},
      {"reach_fraction", g.reach_fraction},
      {"first_support", g.first_support == Side::Left ? "left" : "right"},
      {"fitness_mode", g.fitness_mode == FitnessMode::L1 ? "l1" : "euclid"},
      {"polygon_mode", g.polygon.mode == PolygonMode::Footprint ? "footprint" : "ankle_segment"},
      {"footprint_offset", g.polygon.footprint_offset},
      {"swarm",
       {{"c1", g.swarm.c1},
        {"c2", g.swarm.c2},
        {"particle_count", g.swarm.particle_count},
        {"n1", g.swarm.max_iterations},
        {"velocity_clamp", g.swarm.velocity_clamp},
        {"init_radius", g.swarm.init_radius},
        {"convergence_eps", g.swarm.convergence_eps},
        {"parallel", g.swarm.parallel}}},
  };
  if (cfg.mass_fractions) j["mass_fractions"] = segment_json(*cfg.mass_fractions);
  if (cfg.com_locations) j["com_locations"] = segment_json(*cfg.com_locations);
  if (cfg.joint_limits) j["joint_limits"] = limits_json(*cfg.joint_limits);
  return j.dump(2) + "\n";
}

}  // namespace biped
