#include "akb/metaopt.hpp"

#include "akb/metrics.hpp"
#include "akb/parallel.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace akb {

AkbModel decode(const DesignVector& x, std::string name) {
  if (x.size() != kDesignDims) throw ContractViolation("design vector must have 10 components");
  AkbModel model;
  model.name = std::move(name);
  for (int i = 0; i < kDesignDims; ++i) {
    if (!(x[i] >= -kDesignBound && x[i] <= kDesignBound))
      throw ContractViolation("design vector component outside [-2, 2]");
    if (i < 5)
      model.knots_start[static_cast<std::size_t>(i)] = x[i];
    else
      model.knots_final[static_cast<std::size_t>(i - 5)] = x[i];
  }
  return model;
}

DesignVector encode(const AkbModel& model) {
  DesignVector x(kDesignDims);
  for (int i = 0; i < 5; ++i) {
    x[i] = model.knots_start[static_cast<std::size_t>(i)];
    x[i + 5] = model.knots_final[static_cast<std::size_t>(i)];
  }
  return x;
}

TrimmedLogMean trimmed_log_mean(std::span<const double> errors) {
  if (errors.empty()) throw ContractViolation("no errors to average");
  TrimmedLogMean out;
  out.order.resize(errors.size());
  std::iota(out.order.begin(), out.order.end(), std::size_t{0});
  std::stable_sort(out.order.begin(), out.order.end(),
                   [&](std::size_t a, std::size_t b) { return errors[a] < errors[b]; });
  out.trimmed = errors.size() / 10;
  const std::size_t first = out.trimmed;
  const std::size_t last = errors.size() - out.trimmed;
  double sum = 0.0;
  for (std::size_t rank = first; rank < last; ++rank)
    sum += std::log10(std::max(errors[out.order[rank]], kErrorFloor));
  out.value = sum / static_cast<double>(last - first);
  return out;
}

std::vector<double> model_errors(const AkbModel& model, const Suite& suite,
                                 const MetaFitnessSettings& settings) {
  if (settings.runs_per_function < 1) throw ContractViolation("need at least one run per function");
  const std::size_t problems = suite.problems.size();
  const auto runs = static_cast<std::size_t>(settings.runs_per_function);

  PsoConfig base = settings.inner;
  base.inertia = AnakatabaticInertia{model};
  base.warm_start.clear();

  std::vector<std::vector<RunRecord>> records(problems, std::vector<RunRecord>(runs));
  parallel_for(problems * runs, settings.jobs, [&](std::size_t task) {
    const std::size_t p = task / runs;
    const std::size_t r = task % runs;
    const BenchmarkProblem& problem = suite.problems[p];
    const int dims = problem.problem.space.dims();
    PsoConfig cfg = base;
    cfg.particles = settings.particles_per_dim * dims;
    cfg.budget = RunBudget{settings.evals_per_dim * dims};
    cfg.seed = derive_seed(settings.seed, {stable_hash(problem.name()), r});
    try {
      records[p][r] = run(problem.problem, cfg);
    } catch (const NonFiniteFitness& e) {
      throw NonFiniteFitness(problem.name() + ": " + e.what());
    }
  });

  std::vector<double> errors(problems);
  for (std::size_t p = 0; p < problems; ++p)
    errors[p] = epsilon_hat(records[p], suite.problems[p].f_star());
  return errors;
}

double meta_fitness(const DesignVector& x, const Suite& suite,
                    const MetaFitnessSettings& settings) {
  if (suite.problems.size() < 5) throw ContractViolation("meta fitness needs at least five problems");
  const std::vector<double> errors = model_errors(decode(x, "candidate"), suite, settings);
  return trimmed_log_mean(errors).value;
}

MetaoptResult metaoptimize(const Suite& suite, const MetaoptSettings& settings) {
  ObjectiveProblem outer{"meta_fitness", SearchSpace::cube(kDesignDims, -kDesignBound, kDesignBound),
                         [&](const Vector& x) { return meta_fitness(x, suite, settings.inner); },
                         std::nullopt};

  PsoConfig cfg = PsoConfig::standard(kDesignDims);
  cfg.particles = settings.outer_particles;
  cfg.budget = RunBudget{settings.outer_evals};
  cfg.seed = settings.seed;
  cfg.inertia = ConstantInertia{0.72};
  cfg.warm_start = settings.warm_start;

  PsoEngine engine(outer, cfg);
  while (!engine.done()) engine.step();

  MetaoptResult result;
  result.best = engine.state().g;
  result.best_fitness = engine.state().f_g;
  result.model = decode(result.best, settings.name);
  const RunRecord record = engine.record();
  result.history = record.trace;
  result.outer_evals_used = record.evals_used;
  return result;
}

}  // namespace akb
