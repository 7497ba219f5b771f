#include "akb/pso.hpp"

#include <cmath>

namespace akb {

std::string to_string(Variant variant) {
  return variant == Variant::Standard ? "standard" : "tvac";
}

Variant parse_variant(std::string_view text) {
  if (text == "standard") return Variant::Standard;
  if (text == "tvac") return Variant::Tvac;
  throw ConfigError("unknown PSO variant: " + std::string(text));
}

PsoConfig PsoConfig::standard(int dims) {
  PsoConfig cfg;
  cfg.variant = Variant::Standard;
  cfg.particles = 3 * dims;
  cfg.budget = RunBudget{1000L * dims};
  cfg.inertia = ConstantInertia{0.72};
  return cfg;
}

PsoConfig PsoConfig::tvac(int dims) {
  PsoConfig cfg = standard(dims);
  cfg.variant = Variant::Tvac;
  cfg.inertia = cfg.tvac_ldiw;
  return cfg;
}

void PsoConfig::validate(const SearchSpace& space) const {
  if (particles < 2) throw ConfigError("PSO needs at least two particles");
  if (budget.max_evals < 2L * particles)
    throw ConfigError("evaluation budget must cover at least two swarm evaluations");
  for (double c : {c1, c2, c1_start, c1_final, c2_start, c2_final, w0})
    if (!std::isfinite(c)) throw ConfigError("PSO coefficients must be finite");
  akb::validate(inertia);
  akb::validate(InertiaStrategy{tvac_ldiw});
  for (const Vector& start : warm_start)
    if (start.size() != space.dims()) throw ConfigError("warm-start vector has wrong dimension");
}

double PsoConfig::fallback_weight(int t, int t_max) const {
  if (variant == Variant::Tvac) return ldiw_weight(tvac_ldiw.w_min, tvac_ldiw.w_max, t, t_max);
  return w0;
}

Coefficients tvac_coefficients(const PsoConfig& cfg, int t, int t_max) {
  if (cfg.variant == Variant::Standard) return {cfg.c1, cfg.c2};
  if (t_max < 1 || t < 0 || t > t_max) throw ContractViolation("iteration outside [0, t_max]");
  const double tau = static_cast<double>(t) / t_max;
  return {(1.0 - tau) * cfg.c1_start + tau * cfg.c1_final,
          (1.0 - tau) * cfg.c2_start + tau * cfg.c2_final};
}

Vector velocity_update(const Particle& particle, const Vector& g, double w, double c1,
                       double c2, const Vector& r1, const Vector& r2) {
  return w * particle.v + c1 * r1.cwiseProduct(particle.p - particle.x) +
         c2 * r2.cwiseProduct(g - particle.x);
}

Vector velocity_update(const Particle& particle, const Vector& g, double w, double c1,
                       double c2, RngStream& rng) {
  const auto dims = particle.x.size();
  Vector r1(dims);
  Vector r2(dims);
  for (Eigen::Index i = 0; i < dims; ++i) r1[i] = rng.uniform();
  for (Eigen::Index i = 0; i < dims; ++i) r2[i] = rng.uniform();
  return velocity_update(particle, g, w, c1, c2, r1, r2);
}

Vector position_update(const Vector& x, const Vector& v, const SearchSpace& space) {
  return clip_position(x + v, space);
}

PsoEngine::PsoEngine(const ObjectiveProblem& problem, PsoConfig cfg)
    : problem_(&problem),
      cfg_(std::move(cfg)),
      t_max_(0),
      motion_rng_(derive_seed(cfg_.seed, {0})),
      theta_rng_(derive_seed(cfg_.seed, {1})) {
  cfg_.validate(problem.space);
  t_max_ = cfg_.budget.max_iterations(cfg_.particles);
  state_ = initialize_swarm(problem, cfg_.particles, motion_rng_, cfg_.warm_start);
  trace_.reserve(static_cast<std::size_t>(t_max_) + 1);
  trace_.push_back(state_.f_g);
}

std::optional<FitnessDeltas> PsoEngine::next_deltas() const {
  if (state_.t + 1 < 2) return std::nullopt;
  std::vector<double> delta;
  delta.reserve(state_.particles.size());
  for (const Particle& particle : state_.particles) delta.push_back(particle.f_curr - *particle.f_prev);
  return FitnessDeltas::from(std::move(delta));
}

std::vector<double> PsoEngine::next_weights() {
  const int t = state_.t + 1;
  const auto deltas = next_deltas();
  return per_particle_weights(cfg_.inertia, deltas ? &*deltas : nullptr, cfg_.particles, t,
                              t_max_, cfg_.fallback_weight(t, t_max_), theta_rng_);
}

void PsoEngine::step() {
  const auto weights = next_weights();
  step(weights);
}

void PsoEngine::step(std::span<const double> weights) {
  if (done()) throw ContractViolation("evaluation budget exhausted");
  if (weights.size() != state_.particles.size())
    throw ContractViolation("one inertia weight per particle required");

  const int t = state_.t + 1;
  const Coefficients c = tvac_coefficients(cfg_, t, t_max_);
  const Vector g = state_.g;
  for (std::size_t k = 0; k < state_.particles.size(); ++k) {
    Particle& particle = state_.particles[k];
    particle.v = velocity_update(particle, g, weights[k], c.c1, c.c2, motion_rng_);
    particle.x = position_update(particle.x, particle.v, problem_->space);
    const double f = evaluate_checked(*problem_, particle.x, static_cast<int>(k));
    particle.f_prev = particle.f_curr;
    particle.f_curr = f;
  }
  state_.evals += static_cast<long>(state_.particles.size());
  state_.t = t;
  update_bests(state_);
  trace_.push_back(state_.f_g);
}

RunRecord PsoEngine::record() const {
  return RunRecord{state_.f_g, trace_, state_.evals, cfg_.seed};
}

RunRecord run(const ObjectiveProblem& problem, const PsoConfig& cfg) {
  PsoEngine engine(problem, cfg);
  while (!engine.done()) engine.step();
  return engine.record();
}

}  // namespace akb
