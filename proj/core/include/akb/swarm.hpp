#pragma once

#include "akb/rng.hpp"
#include "akb/types.hpp"

#include <optional>
#include <span>
#include <vector>

namespace akb {

struct Particle {
  Vector x;
  Vector v;
  double f_curr = 0.0;
  /// Fitness one iteration back; absent until the particle's second evaluation.
  std::optional<double> f_prev;
  Vector p;
  double f_p = 0.0;
};

struct SwarmState {
  std::vector<Particle> particles;
  Vector g;
  double f_g = 0.0;
  int t = 0;
  long evals = 0;
};

/// Evaluation budget. Initialization spends n evaluations at t = 0 and every
/// iteration spends n more, so t_max = floor(max_evals / n) - 1.
struct RunBudget {
  long max_evals = 0;

  int max_iterations(int n) const;
};

/// Evaluates `x`, throwing NonFiniteFitness naming the particle and position
/// if the objective returns NaN or infinity.
double evaluate_checked(const ObjectiveProblem& problem, const Vector& x, int particle);

/// Uniform positions inside the bounds, velocities uniform in +-(upper - lower).
/// Particle k < warm_start.size() starts at warm_start[k] (clipped) instead;
/// the random position is still drawn so the stream stays aligned.
SwarmState initialize_swarm(const ObjectiveProblem& problem, int n, RngStream& rng,
                            std::span<const Vector> warm_start = {});

Vector clip_position(const Vector& x, const SearchSpace& space);

/// Personal-best refresh followed by a gbest argmin. Ties go to the lowest index.
void update_bests(SwarmState& state);

}  // namespace akb
