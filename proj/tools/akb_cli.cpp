// akb: benchmark harness for PSO with anakatabatic inertia.
//
//   akb run      [--config PATH] [--seed N] [--jobs N] [--out DIR] [--dims D] [--runs R] [--model PATH]...
//   akb list     models|functions [--dims D] [--seed N]
//   akb metaopt  [--config PATH] [--seed N] [--jobs N] [--out DIR] [--dims D] [--runs R] [--model PATH]...
//   akb plotdata [RESULTS_DIR] [--model PATH]... [--out DIR]
//
// Exit codes: 0 success, 1 usage or configuration error, 2 runtime abort.

#include "akb/harness.hpp"
#include "akb/model_io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

struct CommonOptions {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::optional<int> jobs;
  std::string out;
  std::vector<std::string> models;
  std::optional<int> dims;
  std::optional<int> runs;
};

void add_common(CLI::App* cmd, CommonOptions& opts, const std::string& default_out) {
  opts.out = default_out;
  cmd->add_option("--config", opts.config, "JSON configuration file")->check(CLI::ExistingFile);
  cmd->add_option("--seed", opts.seed, "Master seed");
  cmd->add_option("--jobs", opts.jobs, "Parallel worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--out", opts.out, "Output directory")->capture_default_str();
  cmd->add_option("--dims", opts.dims, "Problem dimension D")->check(CLI::PositiveNumber);
  cmd->add_option("--runs", opts.runs, "Runs per function")->check(CLI::PositiveNumber);
}

int do_run(const CommonOptions& opts) {
  akb::HarnessConfig config =
      opts.config.empty() ? akb::HarnessConfig::defaults() : akb::load_config(opts.config);
  if (opts.seed) config.seed = *opts.seed;
  if (opts.jobs) config.jobs = *opts.jobs;
  if (opts.dims) config.suite.dims = *opts.dims;
  if (opts.runs) config.runs = *opts.runs;
  if (!opts.models.empty()) {
    // Baseline stays; every model becomes an anakatabatic counterpart of it.
    const akb::VariantSpec baseline = config.variants.front();
    config.variants = {baseline};
    for (const std::string& path : opts.models) {
      akb::VariantSpec v = baseline;
      const akb::AkbModel model = akb::load_model(path);
      v.name = akb::to_string(baseline.variant) + "+" + model.name;
      v.inertia = akb::AnakatabaticInertia{model};
      config.variants.push_back(v);
    }
  }
  return akb::cmd_run(config, opts.out, std::cout);
}

int do_metaopt(const CommonOptions& opts) {
  akb::MetaoptConfig config;
  if (!opts.config.empty()) {
    std::ifstream in(opts.config);
    config = nlohmann::json::parse(in).get<akb::MetaoptConfig>();
  }
  if (opts.seed) config.seed = *opts.seed;
  if (opts.jobs) config.jobs = *opts.jobs;
  if (opts.dims) config.suite.dims = *opts.dims;
  if (opts.runs) config.runs = *opts.runs;
  for (const std::string& path : opts.models) config.warm_start.push_back(path);
  return akb::cmd_metaopt(config, opts.out, std::cout);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"PSO with anakatabatic inertia: benchmark harness and metaoptimizer"};
  app.require_subcommand(1);

  CommonOptions run_opts;
  auto* run = app.add_subcommand("run", "Benchmark PSO variants on the desk suite");
  add_common(run, run_opts, "results");
  run->add_option("--model", run_opts.models, "Anakatabatic model JSON (repeatable)")
      ->check(CLI::ExistingFile);

  std::string list_kind;
  int list_dims = 10;
  std::uint64_t list_seed = 42;
  auto* list = app.add_subcommand("list", "List built-in models or suite functions");
  list->add_option("kind", list_kind, "models | functions")->required();
  list->add_option("--dims", list_dims, "Problem dimension D")->capture_default_str()->check(CLI::PositiveNumber);
  list->add_option("--seed", list_seed, "Suite seed")->capture_default_str();

  CommonOptions meta_opts;
  auto* metaopt = app.add_subcommand("metaopt", "Search for a new anakatabatic model");
  add_common(metaopt, meta_opts, "metaopt");
  metaopt->add_option("--model", meta_opts.models, "Warm-start model JSON (repeatable)")
      ->check(CLI::ExistingFile);

  std::string plot_dir;
  std::vector<std::string> plot_models;
  std::string plot_out;
  auto* plotdata = app.add_subcommand("plotdata", "Emit model curves and trace aggregates");
  plotdata->add_option("results", plot_dir, "Results directory from run or metaopt");
  plotdata->add_option("--model", plot_models, "Model JSON (repeatable)")->check(CLI::ExistingFile);
  plotdata->add_option("--out", plot_out, "Output directory (default RESULTS/plotdata)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return akb::kExitUsage;
  }

  try {
    if (*run) return do_run(run_opts);
    if (*list) return akb::cmd_list(akb::parse_list_kind(list_kind), list_dims, list_seed, std::cout);
    if (*metaopt) return do_metaopt(meta_opts);
    if (*plotdata) {
      if (plot_dir.empty() && plot_models.empty()) {
        std::cerr << "plotdata: give a results directory or at least one --model\n";
        return akb::kExitUsage;
      }
      std::vector<std::filesystem::path> models(plot_models.begin(), plot_models.end());
      std::filesystem::path out = plot_out;
      if (out.empty()) out = plot_dir.empty() ? "plotdata" : std::filesystem::path(plot_dir) / "plotdata";
      return akb::cmd_plotdata(plot_dir, models, out, std::cout);
    }
  } catch (const akb::ConfigError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return akb::kExitUsage;
  } catch (const akb::NotFound& e) {
    std::cerr << "error: " << e.what() << '\n';
    return akb::kExitUsage;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return akb::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "aborted: " << e.what() << '\n';
    return akb::kExitRuntime;
  }
  return akb::kExitUsage;
}
