#pragma once

#include "akb/inertia.hpp"
#include "akb/metrics.hpp"
#include "akb/pso.hpp"
#include "akb/suite.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <filesystem>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace akb {

/// One optimizer configuration under test.
struct VariantSpec {
  std::string name;
  Variant variant = Variant::Standard;
  InertiaStrategy inertia = ConstantInertia{0.72};
  /// Optional overrides of the variant defaults.
  std::optional<double> c1, c2, w0;
};

struct SuiteSpec {
  int dims = 10;
  std::uint64_t seed = 42;
  /// When set, the suite is loaded from an exported recipe instead.
  std::optional<std::filesystem::path> recipe;
  /// Use only the first N problems (0 = all).
  std::size_t problems = 0;
};

/// Everything that determines a benchmark experiment. Serialized verbatim
/// into every results directory.
struct HarnessConfig {
  SuiteSpec suite;
  std::vector<VariantSpec> variants;
  int runs = 10;
  std::uint64_t seed = 1;
  int jobs = 1;
  long evals_per_dim = 1000;
  int particles_per_dim = 3;
  bool write_traces = true;

  /// TVAC-PSO with LDIW vs TVAC-PSO with "Rightward Peaks".
  static HarnessConfig defaults();
  void validate() const;
};

void to_json(nlohmann::json& j, const SuiteSpec& spec);
void from_json(const nlohmann::json& j, SuiteSpec& spec);
void to_json(nlohmann::json& j, const VariantSpec& spec);
void from_json(const nlohmann::json& j, VariantSpec& spec);
void to_json(nlohmann::json& j, const HarnessConfig& config);
void from_json(const nlohmann::json& j, HarnessConfig& config);

HarnessConfig load_config(const std::filesystem::path& path);

Suite make_suite(const SuiteSpec& spec);

/// Inner PSO configuration for one variant on a D-dimensional problem.
PsoConfig make_pso_config(const VariantSpec& spec, int dims, long evals_per_dim,
                          int particles_per_dim);

/// Seed of run `run` on problem `problem`; shared across variants.
std::uint64_t run_seed(std::uint64_t master, std::size_t problem, std::size_t run);

struct ExperimentResults {
  Suite suite;
  /// results[variant][problem]
  std::vector<std::vector<FunctionResult>> results;
  /// Diagnostics of aborted runs, e.g. "tvac/F04_rosenbrock/run 3: ...".
  std::vector<std::string> errors;

  bool complete() const { return errors.empty(); }
};

/// Runs every (variant, problem, run) task; results are positional, so the
/// thread count never changes them. Failed runs are left out and reported.
ExperimentResults run_experiment(const HarnessConfig& config);
ExperimentResults run_experiment(const HarnessConfig& config, const Suite& suite);

/// problem,variant,model,seed,final_best,eps,evals
void write_runs_csv(std::ostream& out, const HarnessConfig& config,
                    const ExperimentResults& results);

/// Comparison of variant 0 (baseline) against variant 1; needs exactly two variants.
SuiteComparison compare_variants(const ExperimentResults& results);

/// Process exit codes.
enum ExitCode : int { kExitOk = 0, kExitUsage = 1, kExitRuntime = 2 };

/// Writes config.json, runs.csv, traces/, summary.csv (two variants only)
/// and manifest.json under `out_dir`.
int cmd_run(const HarnessConfig& config, const std::filesystem::path& out_dir,
            std::ostream& log);

enum class ListKind { Models, Functions };
/// Throws ConfigError for anything but "models" / "functions".
ListKind parse_list_kind(std::string_view text);
int cmd_list(ListKind kind, int dims, std::uint64_t seed, std::ostream& out);

struct MetaoptConfig {
  SuiteSpec suite{10, 42, std::nullopt, 0};
  Variant variant = Variant::Tvac;
  int runs = 8;
  std::uint64_t seed = 1;
  int jobs = 1;
  long outer_evals = 400;
  int outer_particles = 10;
  long evals_per_dim = 1000;
  int particles_per_dim = 3;
  std::string name = "discovered";
  /// Built-in model names or model file paths.
  std::vector<std::string> warm_start;
};

void to_json(nlohmann::json& j, const MetaoptConfig& config);
void from_json(const nlohmann::json& j, MetaoptConfig& config);

/// Writes model.json (model plus provenance), history.csv, config.json and manifest.json.
int cmd_metaopt(const MetaoptConfig& config, const std::filesystem::path& out_dir,
                std::ostream& log);

/// Sampled (theta, W_s, W_f) curves: 25 points per knot segment, knots exact.
void write_model_curve(std::ostream& out, const AkbModel& model);

/// Median and quartiles of run traces per iteration.
struct TraceAggregate {
  std::vector<double> median, q1, q3;
};
TraceAggregate aggregate_traces(const std::vector<std::vector<double>>& traces);

/// Emits curves/ for every anakatabatic model referenced by the results
/// config (plus `extra_models`) and aggregates/ for every trace set.
int cmd_plotdata(const std::filesystem::path& results_dir,
                 const std::vector<std::filesystem::path>& extra_models,
                 const std::filesystem::path& out_dir, std::ostream& log);

}  // namespace akb
