#include "akb/swarm.hpp"

#include <cmath>
#include <sstream>

namespace akb {

SearchSpace::SearchSpace(Vector lower, Vector upper)
    : lower_(std::move(lower)), upper_(std::move(upper)) {
  if (lower_.size() < 1) throw ConfigError("search space needs at least one dimension");
  if (lower_.size() != upper_.size())
    throw ConfigError("search space bounds have different lengths");
  for (Eigen::Index i = 0; i < lower_.size(); ++i) {
    if (!(lower_[i] < upper_[i])) {
      std::ostringstream msg;
      msg << "search space dimension " << i << " has lower >= upper";
      throw ConfigError(msg.str());
    }
  }
}

SearchSpace SearchSpace::cube(int dims, double lo, double hi) {
  if (dims < 1) throw ConfigError("search space needs at least one dimension");
  return SearchSpace(Vector::Constant(dims, lo), Vector::Constant(dims, hi));
}

bool SearchSpace::contains(const Vector& x) const {
  return x.size() == lower_.size() && (x.array() >= lower_.array()).all() &&
         (x.array() <= upper_.array()).all();
}

bool SearchSpace::contains_strictly(const Vector& x) const {
  return x.size() == lower_.size() && (x.array() > lower_.array()).all() &&
         (x.array() < upper_.array()).all();
}

int RunBudget::max_iterations(int n) const {
  if (n < 1) throw ContractViolation("particle count must be positive");
  return static_cast<int>(max_evals / n) - 1;
}

double evaluate_checked(const ObjectiveProblem& problem, const Vector& x, int particle) {
  const double f = problem.evaluate(x);
  if (!std::isfinite(f)) {
    std::ostringstream msg;
    msg.precision(17);
    msg << problem.name << ": non-finite fitness " << f << " for particle " << particle
        << " at x = (";
    for (Eigen::Index i = 0; i < x.size(); ++i) msg << (i ? ", " : "") << x[i];
    msg << ")";
    throw NonFiniteFitness(msg.str());
  }
  return f;
}

SwarmState initialize_swarm(const ObjectiveProblem& problem, int n, RngStream& rng,
                            std::span<const Vector> warm_start) {
  if (n < 2) throw ContractViolation("swarm needs at least two particles");
  const SearchSpace& space = problem.space;
  const int dims = space.dims();
  const Vector width = space.width();

  SwarmState state;
  state.particles.resize(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    Particle& particle = state.particles[static_cast<std::size_t>(k)];
    particle.x.resize(dims);
    particle.v.resize(dims);
    for (int i = 0; i < dims; ++i) particle.x[i] = rng.uniform(space.lower()[i], space.upper()[i]);
    for (int i = 0; i < dims; ++i) particle.v[i] = rng.uniform(-width[i], width[i]);
    if (static_cast<std::size_t>(k) < warm_start.size()) {
      const Vector& start = warm_start[static_cast<std::size_t>(k)];
      if (start.size() != dims) throw ContractViolation("warm-start vector has wrong dimension");
      particle.x = clip_position(start, space);
    }
    particle.f_curr = evaluate_checked(problem, particle.x, k);
    particle.f_prev.reset();
    particle.p = particle.x;
    particle.f_p = particle.f_curr;
  }
  state.t = 0;
  state.evals = n;
  state.g = state.particles.front().p;
  state.f_g = state.particles.front().f_p;
  update_bests(state);
  return state;
}

Vector clip_position(const Vector& x, const SearchSpace& space) {
  return x.cwiseMax(space.lower()).cwiseMin(space.upper());
}

void update_bests(SwarmState& state) {
  std::size_t best = 0;
  for (std::size_t k = 0; k < state.particles.size(); ++k) {
    Particle& particle = state.particles[k];
    if (particle.f_curr < particle.f_p) {
      particle.p = particle.x;
      particle.f_p = particle.f_curr;
    }
    if (particle.f_p < state.particles[best].f_p) best = k;
  }
  state.g = state.particles[best].p;
  state.f_g = state.particles[best].f_p;
}

}  // namespace akb
