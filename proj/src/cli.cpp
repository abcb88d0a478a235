#include "biped/cli.hpp"

#include <CLI11.hpp>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numeric>
#include <optional>
#include <sstream>

#include "biped/error.hpp"
#include "biped/gaitio.hpp"

namespace biped::cli {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorKind::ParseError, "cannot open '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

void write_file(const std::string& path, const std::string& bytes) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error(ErrorKind::ParseError, "cannot write '" + path + "'");
  out << bytes;
}

Point3 parse_point(const std::string& text) {
  Point3 p;
  std::istringstream s(text);
  std::string part;
  int i = 0;
  while (std::getline(s, part, ',')) {
    if (i >= 3) break;
    std::size_t used = 0;
    try {
      p(i) = std::stod(part, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != part.size())
      throw Error(ErrorKind::ParseError, "bad coordinate '" + part + "' in '" + text + "'");
    ++i;
  }
  if (i != 3 || s.rdbuf()->in_avail() > 0)
    throw Error(ErrorKind::ParseError, "expected x,y,z but got '" + text + "'");
  return p;
}

bool is_marker_file(const std::string& text) {
  std::istringstream s(text);
  std::string line;
  while (std::getline(s, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    return line == "frame,marker,x,y,z";
  }
  return false;
}

ChannelTable load_channels(const std::string& path) {
  const std::string text = read_file(path);
  if (is_marker_file(text)) return import_markers(text).channels();
  return trajectory_channels(import_trajectory(text));
}

// Flags shared by the subcommands that need a walker.
struct BodyFlags {
  std::optional<double> height;
  std::optional<double> mass;
  std::optional<std::string> config;
  std::optional<std::string> fitness_mode;

  void attach(CLI::App* app) {
    app->add_option("--height", height, "Body height in meters");
    app->add_option("--mass", mass, "Body mass in kilograms");
    app->add_option("--config", config, "JSON run configuration (explicit flags win)");
    app->add_option("--fitness-mode", fitness_mode, "Posture fitness: l1 or euclid")
        ->check(CLI::IsMember({"l1", "euclid"}));
  }

  RunConfig resolve() const {
    RunConfig cfg = config ? load_config(read_file(*config)) : RunConfig{};
    if (height) cfg.height = *height;
    if (mass) cfg.mass = *mass;
    if (fitness_mode)
      cfg.gait.fitness_mode = *fitness_mode == "l1" ? FitnessMode::L1 : FitnessMode::Euclidean;
    return cfg;
  }
};

const char* phase_label(SupportPhase p) {
  switch (p) {
    case SupportPhase::SingleLeft: return "single_left";
    case SupportPhase::SingleRight: return "single_right";
    default: return "double";
  }
}

int cmd_generate(const BodyFlags& body, std::optional<int> steps, std::optional<std::uint64_t> seed,
                 bool parallel, const std::string& out_path, std::ostream& out) {
  RunConfig cfg = body.resolve();
  if (steps) cfg.gait.steps = *steps;
  if (seed) cfg.gait.seed = *seed;
  if (parallel) cfg.gait.swarm.parallel = true;
  validate_config(cfg);

  const GaitResult result = generate_gait(cfg.skeleton(), cfg.gait);
  write_file(out_path, export_trajectory(result.trajectory));

  const auto& recs = result.trajectory.records;
  const auto stable = std::count_if(recs.begin(), recs.end(), [](const auto& r) { return r.stable; });
  const double mean_fitness =
      std::accumulate(recs.begin(), recs.end(), 0.0,
                      [](double acc, const TrajectoryRecord& r) { return acc + r.fitness; }) /
      static_cast<double>(recs.size());
  out << "steps committed: " << result.committed_steps << " / " << cfg.gait.steps << "\n"
      << "records:         " << recs.size() << "\n"
      << "stable fraction: " << static_cast<double>(stable) / static_cast<double>(recs.size()) << "\n"
      << "pelvis advance:  " << recs.back().posture.pelvis.x() - recs.front().posture.pelvis.x()
      << " m\n"
      << "mean fitness:    " << mean_fitness << "\n"
      << "written:         " << out_path << "\n";
  if (result.failure) {
    out << "StepInfeasible at step " << result.failure->step << ", via-point " << result.failure->via
        << ": " << result.failure->reason << "\n";
    return kStepInfeasible;
  }
  return kSuccess;
}

int cmd_check(const BodyFlags& body, const std::string& in_path, std::ostream& out) {
  const RunConfig cfg = body.resolve();
  validate_config(cfg);
  const Skeleton sk = cfg.skeleton();
  const GaitTrajectory traj = import_trajectory(read_file(in_path));
  if (traj.records.empty()) throw Error(ErrorKind::EmptyTrajectory, "no records in '" + in_path + "'");

  std::size_t passed = 0;
  for (std::size_t i = 0; i < traj.records.size(); ++i) {
    const TrajectoryRecord& r = traj.records[i];
    const StepValidation v = validate_step(r.posture, sk, cfg.gait);
    passed += v.accepted ? 1 : 0;
    out << "record " << i << " step " << r.step << " via " << r.via << " " << phase_label(r.phase)
        << ": " << (v.accepted ? "PASS" : "FAIL");
    if (v.reason == RejectReason::None || v.reason == RejectReason::ComOutsidePolygon)
      out << " margin " << v.stability.margin.margin << " fitness " << v.fitness;
    else
      out << " " << to_string(v.reason);
    out << "\n";
  }
  out << passed << "/" << traj.records.size() << " records stable\n";
  return passed == traj.records.size() ? kSuccess : kCheckFailed;
}

int cmd_plot(const std::string& in_path, const std::string& channel, const std::string& out_path,
             std::ostream& out) {
  const GaitTrajectory traj = import_trajectory(read_file(in_path));
  write_file(out_path, emit_plot(traj, channel));
  out << "written: " << out_path << "\n";
  return kSuccess;
}

int cmd_compare(const std::string& a, const std::string& b, std::ostream& out) {
  const ComparisonReport report = compare_trajectories(load_channels(a), load_channels(b));
  out << std::left << std::setw(20) << "channel" << std::right << std::setw(16) << "rmse"
      << std::setw(16) << "max_abs" << "\n";
  for (const ChannelError& c : report.channels)
    out << std::left << std::setw(20) << c.name << std::right << std::setw(16) << c.rmse
        << std::setw(16) << c.max_abs << "\n";
  return kSuccess;
}

int cmd_ik(const std::string& hip, const std::string& target, double height, std::ostream& out) {
  const SegmentLengths l = segment_lengths(height);
  try {
    const SagittalSolution s = two_link_ik(parse_point(hip), parse_point(target), l.femur_length, l.tibia_length);
    out << "theta_hip:  " << s.theta_hip << " rad (" << degrees(s.theta_hip) << " deg)\n"
        << "theta_knee: " << s.theta_knee << " rad (" << degrees(s.theta_knee) << " deg)\n";
  } catch (const Error& e) {
    if (e.kind() == ErrorKind::Unreachable) {
      out << "Unreachable\n";
      return kInputError;
    }
    throw;
  }
  return kSuccess;
}

}  // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Biped gait generation by hierarchical particle swarms", "bipedgait"};
  app.require_subcommand(1);

  BodyFlags gen_body, check_body;
  std::optional<int> steps;
  std::optional<std::uint64_t> seed;
  bool parallel = false;
  std::string out_path, in_path, channel, path_a, path_b, hip, target;
  double ik_height = 1.70;

  CLI::App* gen = app.add_subcommand("generate", "Generate a gait and write its trajectory CSV");
  gen_body.attach(gen);
  gen->add_option("--steps", steps, "Number of half-steps (n2)");
  gen->add_option("--seed", seed, "Master random seed");
  gen->add_flag("--parallel", parallel, "Evaluate particles in parallel");
  gen->add_option("--out", out_path, "Output trajectory CSV")->required();

  CLI::App* check = app.add_subcommand("check", "Re-validate the stability of every record");
  check_body.attach(check);
  check->add_option("--in", in_path, "Trajectory CSV")->required();

  CLI::App* plot = app.add_subcommand("plot", "Plot trajectory channels as SVG");
  plot->add_option("--in", in_path, "Trajectory CSV")->required();
  plot->add_option("--channel", channel, "Channel name or group prefix (e.g. com)")->required();
  plot->add_option("--out", out_path, "Output SVG")->required();

  CLI::App* compare = app.add_subcommand("compare", "Per-channel RMSE between two trajectories");
  compare->add_option("--a", path_a, "Trajectory CSV")->required();
  compare->add_option("--b", path_b, "Trajectory or marker CSV")->required();

  CLI::App* ik = app.add_subcommand("ik", "Closed-form sagittal two-link leg solve");
  ik->add_option("--hip", hip, "Hip position x,y,z")->required();
  ik->add_option("--target", target, "Ankle target x,y,z")->required();
  ik->add_option("--height", ik_height, "Body height in meters");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << e.what() << "\n";
    return kUsageError;
  }

  try {
    if (gen->parsed()) return cmd_generate(gen_body, steps, seed, parallel, out_path, out);
    if (check->parsed()) return cmd_check(check_body, in_path, out);
    if (plot->parsed()) return cmd_plot(in_path, channel, out_path, out);
    if (compare->parsed()) return cmd_compare(path_a, path_b, out);
    if (ik->parsed()) return cmd_ik(hip, target, ik_height, out);
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kInputError;
  }
  return kUsageError;
}

}  // namespace biped::cli
