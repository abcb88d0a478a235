#pragma once

#include <cstdint>
#include <functional>
#include <initializer_list>
#include <random>
#include <vector>

#include <Eigen/Core>

#include "biped/anthro.hpp"
#include "biped/kinematics.hpp"

namespace biped {

/// Particle coordinates: an angle pair, (theta, alpha) for joint swarms.
using Vec2 = Eigen::Array2d;

struct SwarmConfig {
  double c1 = 2.0;  // cognitive coefficient
  double c2 = 2.0;  // social coefficient
  int particle_count = 30;
  int max_iterations = 200;       // n1
  double velocity_clamp = 0.01;   // rad / iteration
  double init_radius = 0.6;       // rad
  double convergence_eps = 1e-4;  // m
  bool parallel = false;          // evaluate particle fitness with OpenMP

  void validate() const;
  bool operator==(const SwarmConfig&) const = default;
};

/// Axis-aligned bounds on particle positions.
struct SearchBox {
  Vec2 lower;
  Vec2 upper;

  static SearchBox from(const JointLimit& limit);
  Vec2 clamp(const Vec2& p) const { return p.max(lower).min(upper); }
  bool contains(const Vec2& p) const { return (p >= lower).all() && (p <= upper).all(); }
};

/// splitmix64 finalizer.
std::uint64_t mix64(std::uint64_t x);

/// Derives an independent substream seed from a master seed and a tag path
/// (step, via-point, attempt, leg, joint, ...). Order of the tags matters; the
/// order in which substreams are consumed does not.
std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags);

class Rng {
public:
  explicit Rng(std::uint64_t seed = 0) : engine_(seed) {}

  /// Uniform on the closed interval [0, 1].
  double uniform01() {
    return static_cast<double>(engine_() >> 11) * (1.0 / 9007199254740991.0);
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform01(); }

private:
  std::mt19937_64 engine_;
};

enum class ParticleRole { Memory, Search };

struct Particle {
  Vec2 position = Vec2::Zero();
  Vec2 velocity = Vec2::Zero();
  Vec2 best_position = Vec2::Zero();
  double best_fitness = 0.0;
  ParticleRole role = ParticleRole::Search;
};

/// v + c1*r1*(lbest - x) + c2*r2*(gbest - x), clamped to +/- velocity_clamp.
Vec2 update_velocity(const Vec2& velocity, const Vec2& position, const Vec2& lbest,
                     const Vec2& gbest, const SwarmConfig& cfg, const Vec2& r1, const Vec2& r2);

/// Same update drawing r1 (theta, alpha) then r2 (theta, alpha) from `rng`.
Vec2 update_velocity(const Particle& p, const Vec2& gbest, const SwarmConfig& cfg, Rng& rng);

/// x + v, clamped into the box.
Vec2 update_position(const Vec2& position, const Vec2& velocity, const SearchBox& box);

/// Euclidean distance between a candidate joint position and its target.
double local_fitness(const Point3& candidate, const Point3& target);

/// Uniform in (memory +/- init_radius) intersected with the box; personal bests
/// start at the initial positions with fitness +inf until evaluated.
std::vector<Particle> init_search_particles(const Particle& memory, const SwarmConfig& cfg,
                                            const SearchBox& box, Rng& rng,
                                            const Vec2& initial_velocity = Vec2::Zero());

struct JointId {
  Side leg = Side::Left;
  Joint joint = Joint::Hip;
};

struct SwarmBest {
  Vec2 position = Vec2::Zero();
  Vec2 velocity = Vec2::Zero();
  double fitness = 0.0;
};

/// One joint's swarm: the memory particle holds the last validated state and
/// the search particles explore around it.
struct SubSwarm {
  JointId id;
  SearchBox box;
  Particle memory;
  std::vector<Particle> search;
  SwarmBest best;
  Rng rng;
};

SubSwarm make_subswarm(JointId id, const Vec2& memory_position, const SearchBox& box,
                       const SwarmConfig& cfg, std::uint64_t seed,
                       const Vec2& initial_velocity = Vec2::Zero());

using FitnessFn = std::function<double(const Vec2&)>;

struct SwarmRun {
  SwarmBest best;
  int iterations = 0;
  std::vector<double> history;  // global best fitness after init and after each iteration
};

/// Evaluates the memory and the search particles, then iterates velocity and
/// position updates until the global best drops below convergence_eps or the
/// iteration budget runs out. `fitness` must be safe to call concurrently when
/// cfg.parallel is set.
SwarmRun run_subswarm(SubSwarm& swarm, const FitnessFn& fitness, const SwarmConfig& cfg);

}  // namespace biped
