#include "biped/swarm.hpp"

#include <cmath>
#include <limits>

#include "biped/error.hpp"

namespace biped {

void SwarmConfig::validate() const {
  auto fail = [](const char* key, const char* what) {
    throw Error(ErrorKind::InvalidSwarmConfig, what, key);
  };
  if (!(c1 >= 0.0)) fail("c1", "c1 must be non-negative");
  if (!(c2 >= 0.0)) fail("c2", "c2 must be non-negative");
  if (particle_count < 2) fail("particle_count", "need at least 2 particles");
  if (max_iterations < 1) fail("n1", "need at least one iteration");
  if (!(velocity_clamp > 0.0)) fail("velocity_clamp", "velocity clamp must be positive");
  if (!(init_radius >= 0.0)) fail("init_radius", "init radius must be non-negative");
  if (!(convergence_eps >= 0.0)) fail("convergence_eps", "convergence eps must be non-negative");
}

SearchBox SearchBox::from(const JointLimit& limit) {
  return {Vec2(limit.theta.min, limit.alpha.min), Vec2(limit.theta.max, limit.alpha.max)};
}

std::uint64_t mix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t derive_seed(std::uint64_t master, std::initializer_list<std::uint64_t> tags) {
  std::uint64_t h = mix64(master);
  for (std::uint64_t t : tags) h = mix64(h ^ mix64(t));
  return h;
}

Vec2 update_velocity(const Vec2& velocity, const Vec2& position, const Vec2& lbest,
                     const Vec2& gbest, const SwarmConfig& cfg, const Vec2& r1, const Vec2& r2) {
  const Vec2 v = velocity + cfg.c1 * r1 * (lbest - position) + cfg.c2 * r2 * (gbest - position);
  return v.max(-cfg.velocity_clamp).min(cfg.velocity_clamp);
}

Vec2 update_velocity(const Particle& p, const Vec2& gbest, const SwarmConfig& cfg, Rng& rng) {
  Vec2 r1, r2;
  r1(0) = rng.uniform01();
  r1(1) = rng.uniform01();
  r2(0) = rng.uniform01();
  r2(1) = rng.uniform01();
  return update_velocity(p.velocity, p.position, p.best_position, gbest, cfg, r1, r2);
}

Vec2 update_position(const Vec2& position, const Vec2& velocity, const SearchBox& box) {
  return box.clamp(position + velocity);
}

double local_fitness(const Point3& candidate, const Point3& target) {
  return (candidate - target).norm();
}

std::vector<Particle> init_search_particles(const Particle& memory, const SwarmConfig& cfg,
                                            const SearchBox& box, Rng& rng,
                                            const Vec2& initial_velocity) {
  const Vec2 lo = (memory.position - cfg.init_radius).max(box.lower);
  const Vec2 hi = (memory.position + cfg.init_radius).min(box.upper);
  if ((lo > hi).any())
    throw Error(ErrorKind::EmptySearchSpace, "initialization box does not meet the joint limits");

  std::vector<Particle> particles(static_cast<std::size_t>(cfg.particle_count));
  for (Particle& p : particles) {
    p.position(0) = rng.uniform(lo(0), hi(0));
    p.position(1) = rng.uniform(lo(1), hi(1));
    p.velocity = initial_velocity;
    p.best_position = p.position;
    p.best_fitness = std::numeric_limits<double>::infinity();
    p.role = ParticleRole::Search;
  }
  return particles;
}

SubSwarm make_subswarm(JointId id, const Vec2& memory_position, const SearchBox& box,
                       const SwarmConfig& cfg, std::uint64_t seed, const Vec2& initial_velocity) {
  SubSwarm sw;
  sw.id = id;
  sw.box = box;
  sw.rng = Rng(seed);
  sw.memory.position = box.clamp(memory_position);
  sw.memory.best_position = sw.memory.position;
  sw.memory.best_fitness = std::numeric_limits<double>::infinity();
  sw.memory.role = ParticleRole::Memory;
  sw.search = init_search_particles(sw.memory, cfg, box, sw.rng, initial_velocity);
  return sw;
}

namespace {

void evaluate(std::vector<Particle>& particles, std::vector<double>& values, const FitnessFn& fitness,
              bool parallel) {
  const long n = static_cast<long>(particles.size());
#pragma omp parallel for schedule(static) if (parallel)
  for (long i = 0; i < n; ++i) values[static_cast<std::size_t>(i)] = fitness(particles[static_cast<std::size_t>(i)].position);
}

}  // namespace

SwarmRun run_subswarm(SubSwarm& sw, const FitnessFn& fitness, const SwarmConfig& cfg) {
  SwarmRun run;
  std::vector<double> values(sw.search.size());

  sw.memory.best_fitness = fitness(sw.memory.position);
  sw.best = {sw.memory.position, Vec2::Zero(), sw.memory.best_fitness};

  auto reduce = [&] {
    // lowest index wins ties; the incumbent is kept unless strictly beaten
    for (std::size_t i = 0; i < sw.search.size(); ++i) {
      Particle& p = sw.search[i];
      if (values[i] < p.best_fitness) {
        p.best_fitness = values[i];
        p.best_position = p.position;
      }
      if (values[i] < sw.best.fitness) sw.best = {p.position, p.velocity, values[i]};
    }
    run.history.push_back(sw.best.fitness);
  };

  evaluate(sw.search, values, fitness, cfg.parallel);
  reduce();

  while (run.iterations < cfg.max_iterations && !(sw.best.fitness < cfg.convergence_eps)) {
    const Vec2 gbest = sw.best.position;
    for (Particle& p : sw.search) {
      p.velocity = update_velocity(p, gbest, cfg, sw.rng);
      p.position = update_position(p.position, p.velocity, sw.box);
    }
    evaluate(sw.search, values, fitness, cfg.parallel);
    reduce();
    ++run.iterations;
  }
  run.best = sw.best;
  return run;
}

}  // namespace biped
