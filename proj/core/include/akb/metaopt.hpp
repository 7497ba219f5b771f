#pragma once

#include "akb/inertia.hpp"
#include "akb/pso.hpp"
#include "akb/suite.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace akb {

inline constexpr int kDesignDims = 10;
inline constexpr double kDesignBound = 2.0;

/// Design vector layout: W_s knots (5) followed by W_f knots (5).
using DesignVector = Vector;

/// Throws ContractViolation for a wrong length or a component outside [-2, 2].
AkbModel decode(const DesignVector& x, std::string name);
DesignVector encode(const AkbModel& model);

/// Outcome of trimming sorted errors.
struct TrimmedLogMean {
  double value = 0.0;
  /// Problem indices in ascending-error order; ties broken by index.
  std::vector<std::size_t> order;
  /// Number of entries discarded at each end.
  std::size_t trimmed = 0;
};

/// Sorts errors ascending, drops floor(N / 10) from each end and averages
/// log10 over the rest. For N = 30 the kept ranks are 4..27 (1-based).
TrimmedLogMean trimmed_log_mean(std::span<const double> errors);

struct MetaFitnessSettings {
  /// Inner PSO template; inertia, budget, particle count and seed are overwritten per run.
  PsoConfig inner = PsoConfig::standard(10);
  int runs_per_function = 8;
  long evals_per_dim = 1000;
  int particles_per_dim = 3;
  /// Inner runs use derive_seed(seed, {stable_hash(problem name), run}) for
  /// every design vector, so F_M is a deterministic function of the design
  /// vector and does not depend on problem order.
  std::uint64_t seed = 0;
  int jobs = 1;
};

/// Per-problem errors eps = mean(final best) - f* for the decoded model.
std::vector<double> model_errors(const AkbModel& model, const Suite& suite,
                                 const MetaFitnessSettings& settings);

/// Metaoptimization fitness F_M of a design vector (lower is better).
double meta_fitness(const DesignVector& x, const Suite& suite,
                    const MetaFitnessSettings& settings);

struct MetaoptSettings {
  long outer_evals = 400;
  int outer_particles = 10;
  std::uint64_t seed = 0;
  /// Earlier models injected into the initial outer swarm.
  std::vector<DesignVector> warm_start;
  MetaFitnessSettings inner;
  std::string name = "discovered";
};

struct MetaoptResult {
  AkbModel model;
  DesignVector best;
  double best_fitness = 0.0;
  /// Best F_M after initialization and after every outer iteration.
  std::vector<double> history;
  long outer_evals_used = 0;
};

/// Minimizes F_M over [-2, 2]^10 with Standard PSO and Constant(0.72) inertia.
MetaoptResult metaoptimize(const Suite& suite, const MetaoptSettings& settings);

}  // namespace akb
