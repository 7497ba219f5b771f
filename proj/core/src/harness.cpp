#include "akb/harness.hpp"

#include "akb/metaopt.hpp"
#include "akb/model_io.hpp"
#include "akb/parallel.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <set>
#include <sstream>

namespace akb {

using nlohmann::json;
namespace fs = std::filesystem;

namespace {

std::string timestamp() {
  const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm utc{};
  gmtime_r(&now, &utc);
  std::ostringstream out;
  out << std::put_time(&utc, "%Y-%m-%dT%H:%M:%SZ");
  return out.str();
}

void write_text(const fs::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
}

json read_json(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open " + path.string());
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw ConfigError(path.string() + ": " + e.what());
  }
}

template <class T>
void read_optional(const json& j, const char* key, T& value) {
  if (!j.contains(key)) return;
  try {
    value = j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config field '") + key + "': " + e.what());
  }
}

std::string fnv1a_hex(const std::string& text) {
  std::ostringstream out;
  out << std::hex << std::setw(16) << std::setfill('0') << stable_hash(text);
  return out.str();
}

std::string slug(const std::string& text) {
  std::string out;
  for (char c : text) {
    const auto u = static_cast<unsigned char>(c);
    out.push_back(std::isalnum(u) || c == '-' || c == '_' || c == '+' || c == '.' ? c : '_');
  }
  return out;
}

std::vector<std::vector<double>> read_traces(const fs::path& dir) {
  std::vector<fs::path> files;
  for (const auto& entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  std::vector<std::vector<double>> traces;
  for (const fs::path& file : files) {
    std::ifstream in(file);
    std::string line;
    std::getline(in, line);  // header
    std::vector<double> trace;
    while (std::getline(in, line)) {
      const auto last = line.rfind(',');
      if (last == std::string::npos) continue;
      trace.push_back(std::stod(line.substr(last + 1)));
    }
    traces.push_back(std::move(trace));
  }
  return traces;
}

double quantile(std::vector<double>& sorted, double p) {
  const double h = (static_cast<double>(sorted.size()) - 1.0) * p;
  const auto lo = static_cast<std::size_t>(std::floor(h));
  const std::size_t hi = std::min(lo + 1, sorted.size() - 1);
  return sorted[lo] + (h - static_cast<double>(lo)) * (sorted[hi] - sorted[lo]);
}

}  // namespace

void to_json(json& j, const SuiteSpec& spec) {
  j = json{{"dims", spec.dims}, {"seed", spec.seed}, {"problems", spec.problems}};
  if (spec.recipe) j["recipe"] = spec.recipe->string();
}

void from_json(const json& j, SuiteSpec& spec) {
  if (!j.is_object()) throw ConfigError("'suite' must be an object");
  read_optional(j, "dims", spec.dims);
  read_optional(j, "seed", spec.seed);
  read_optional(j, "problems", spec.problems);
  if (j.contains("recipe")) spec.recipe = j.at("recipe").get<std::string>();
}

void to_json(json& j, const VariantSpec& spec) {
  j = json{{"name", spec.name}, {"variant", to_string(spec.variant)}, {"inertia", spec.inertia}};
  if (spec.c1) j["c1"] = *spec.c1;
  if (spec.c2) j["c2"] = *spec.c2;
  if (spec.w0) j["w0"] = *spec.w0;
}

void from_json(const json& j, VariantSpec& spec) {
  if (!j.is_object()) throw ConfigError("each variant must be an object");
  read_optional(j, "name", spec.name);
  if (j.contains("variant")) spec.variant = parse_variant(j.at("variant").get<std::string>());
  if (j.contains("inertia")) spec.inertia = j.at("inertia").get<InertiaStrategy>();
  if (j.contains("c1")) spec.c1 = j.at("c1").get<double>();
  if (j.contains("c2")) spec.c2 = j.at("c2").get<double>();
  if (j.contains("w0")) spec.w0 = j.at("w0").get<double>();
  if (spec.name.empty()) spec.name = to_string(spec.variant) + "+" + describe(spec.inertia);
}

HarnessConfig HarnessConfig::defaults() {
  HarnessConfig config;
  config.variants = {
      {"tvac", Variant::Tvac, LdiwInertia{0.4, 0.9}, {}, {}, {}},
      {"tvac+rightward-peaks", Variant::Tvac, AnakatabaticInertia{builtin_model("Rightward Peaks")}, {}, {}, {}},
  };
  return config;
}

void HarnessConfig::validate() const {
  if (variants.empty()) throw ConfigError("config lists no variants");
  std::set<std::string> names;
  for (const VariantSpec& v : variants) {
    if (v.name.empty()) throw ConfigError("variant names must be non-empty");
    if (v.name.find('/') != std::string::npos || v.name.find(',') != std::string::npos)
      throw ConfigError("variant name may not contain '/' or ',': " + v.name);
    if (!names.insert(v.name).second) throw ConfigError("duplicate variant name: " + v.name);
    akb::validate(v.inertia);
  }
  if (runs < 1) throw ConfigError("runs must be at least 1");
  if (jobs < 1) throw ConfigError("jobs must be at least 1");
  if (evals_per_dim < 1) throw ConfigError("evals_per_dim must be positive");
  if (particles_per_dim < 1) throw ConfigError("particles_per_dim must be positive");
  if (!suite.recipe && suite.dims < 2) throw ConfigError("suite dims must be at least 2");
}

void to_json(json& j, const HarnessConfig& config) {
  j = json{{"suite", config.suite},
           {"variants", config.variants},
           {"runs", config.runs},
           {"seed", config.seed},
           {"jobs", config.jobs},
           {"evals_per_dim", config.evals_per_dim},
           {"particles_per_dim", config.particles_per_dim},
           {"write_traces", config.write_traces}};
}

void from_json(const json& j, HarnessConfig& config) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  config = HarnessConfig::defaults();
  try {
    if (j.contains("suite")) config.suite = j.at("suite").get<SuiteSpec>();
    if (j.contains("variants")) config.variants = j.at("variants").get<std::vector<VariantSpec>>();
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  read_optional(j, "runs", config.runs);
  read_optional(j, "seed", config.seed);
  read_optional(j, "jobs", config.jobs);
  read_optional(j, "evals_per_dim", config.evals_per_dim);
  read_optional(j, "particles_per_dim", config.particles_per_dim);
  read_optional(j, "write_traces", config.write_traces);
}

HarnessConfig load_config(const fs::path& path) { return read_json(path).get<HarnessConfig>(); }

Suite make_suite(const SuiteSpec& spec) {
  Suite suite = spec.recipe ? import_suite(read_json(*spec.recipe)) : desk_suite(spec.dims, spec.seed);
  return truncate(suite, spec.problems);
}

PsoConfig make_pso_config(const VariantSpec& spec, int dims, long evals_per_dim,
                          int particles_per_dim) {
  PsoConfig cfg = spec.variant == Variant::Tvac ? PsoConfig::tvac(dims) : PsoConfig::standard(dims);
  cfg.particles = particles_per_dim * dims;
  cfg.budget = RunBudget{evals_per_dim * dims};
  cfg.inertia = spec.inertia;
  if (spec.c1) cfg.c1 = *spec.c1;
  if (spec.c2) cfg.c2 = *spec.c2;
  if (spec.w0) cfg.w0 = *spec.w0;
  return cfg;
}

std::uint64_t run_seed(std::uint64_t master, std::size_t problem, std::size_t run) {
  return derive_seed(master, {problem, run});
}

ExperimentResults run_experiment(const HarnessConfig& config) {
  config.validate();
  return run_experiment(config, make_suite(config.suite));
}

ExperimentResults run_experiment(const HarnessConfig& config, const Suite& suite) {
  config.validate();
  const std::size_t variants = config.variants.size();
  const std::size_t problems = suite.problems.size();
  const auto runs = static_cast<std::size_t>(config.runs);

  std::vector<std::optional<RunRecord>> slots(variants * problems * runs);
  std::vector<std::string> failures(slots.size());
  parallel_for(slots.size(), config.jobs, [&](std::size_t task) {
    const std::size_t v = task / (problems * runs);
    const std::size_t p = (task / runs) % problems;
    const std::size_t r = task % runs;
    const BenchmarkProblem& problem = suite.problems[p];
    PsoConfig cfg = make_pso_config(config.variants[v], problem.problem.space.dims(),
                                    config.evals_per_dim, config.particles_per_dim);
    cfg.seed = run_seed(config.seed, p, r);
    try {
      slots[task] = run(problem.problem, cfg);
    } catch (const std::exception& e) {
      failures[task] = config.variants[v].name + "/" + problem.name() + "/run " +
                       std::to_string(r) + ": " + e.what();
    }
  });

  ExperimentResults out;
  out.suite = suite;
  out.results.resize(variants);
  for (std::size_t v = 0; v < variants; ++v) {
    for (std::size_t p = 0; p < problems; ++p) {
      FunctionResult fr{suite.problems[p].name(), suite.problems[p].f_star(), {}};
      for (std::size_t r = 0; r < runs; ++r) {
        const std::size_t task = (v * problems + p) * runs + r;
        if (slots[task]) fr.records.push_back(std::move(*slots[task]));
        if (!failures[task].empty()) out.errors.push_back(failures[task]);
      }
      out.results[v].push_back(std::move(fr));
    }
  }
  return out;
}

void write_runs_csv(std::ostream& out, const HarnessConfig& config,
                    const ExperimentResults& results) {
  out << "problem,variant,model,seed,final_best,eps,evals\n";
  for (std::size_t v = 0; v < results.results.size(); ++v) {
    const VariantSpec& spec = config.variants[v];
    const std::string model = describe(spec.inertia);
    for (const FunctionResult& fr : results.results[v])
      for (const RunRecord& r : fr.records)
        out << fr.problem << ',' << spec.name << ',' << model << ',' << r.seed << ','
            << format_double(r.final_best) << ',' << format_double(r.final_best - fr.f_star) << ','
            << r.evals_used << '\n';
  }
}

SuiteComparison compare_variants(const ExperimentResults& results) {
  if (results.results.size() != 2) throw ContractViolation("comparison needs exactly two variants");
  return compare_suite(results.results[0], results.results[1]);
}

int cmd_run(const HarnessConfig& config, const fs::path& out_dir, std::ostream& log) {
  config.validate();
  const Suite suite = make_suite(config.suite);
  fs::create_directories(out_dir);

  json manifest{{"command", "run"}, {"started", timestamp()}, {"complete", false}};
  write_text(out_dir / "config.json", json(config).dump(2) + "\n");
  write_text(out_dir / "suite.json", export_suite(suite).dump(2) + "\n");
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");

  log << "running " << config.variants.size() << " variant(s) x " << suite.size()
      << " problem(s) x " << config.runs << " run(s) on " << config.jobs << " job(s)\n";
  const ExperimentResults results = run_experiment(config, suite);

  std::ostringstream runs_csv;
  write_runs_csv(runs_csv, config, results);
  write_text(out_dir / "runs.csv", runs_csv.str());

  std::size_t rows = 0;
  for (const auto& per_variant : results.results)
    for (const FunctionResult& fr : per_variant) rows += fr.records.size();

  if (config.write_traces) {
    for (std::size_t v = 0; v < results.results.size(); ++v) {
      const int n = config.particles_per_dim * suite.dims;
      for (const FunctionResult& fr : results.results[v]) {
        const fs::path dir = out_dir / "traces" / slug(config.variants[v].name) / slug(fr.problem);
        fs::create_directories(dir);
        for (std::size_t r = 0; r < fr.records.size(); ++r) {
          std::ostringstream name;
          name << "run_" << std::setw(4) << std::setfill('0') << r << ".csv";
          std::ostringstream csv;
          csv << "iteration,evals,best\n";
          const auto& trace = fr.records[r].trace;
          for (std::size_t t = 0; t < trace.size(); ++t)
            csv << t << ',' << static_cast<long>(t + 1) * n << ',' << format_double(trace[t]) << '\n';
          write_text(dir / name.str(), csv.str());
        }
      }
    }
  }

  bool comparable = results.results.size() == 2;
  for (const auto& per_variant : results.results)
    for (const FunctionResult& fr : per_variant) comparable = comparable && !fr.records.empty();
  if (comparable) {
    const SuiteComparison comparison = compare_variants(results);
    std::ostringstream csv;
    write_comparison_csv(csv, comparison);
    write_text(out_dir / "summary.csv", csv.str());
    manifest["summary"] = "summary.csv";
    log << "alpha_avg = " << format_double(comparison.alpha_avg)
        << ", omega_avg = " << format_double(comparison.omega_avg) << '\n';
  } else {
    manifest["summary"] = nullptr;
    manifest["note"] = results.results.size() == 2
                           ? "summary.csv omitted: some problems have no completed runs"
                           : "summary.csv omitted: comparison needs exactly two variants";
  }

  manifest["complete"] = results.complete();
  manifest["errors"] = results.errors;
  manifest["rows"] = rows;
  manifest["expected_rows"] = config.variants.size() * suite.size() * static_cast<std::size_t>(config.runs);
  manifest["finished"] = timestamp();
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");

  for (const std::string& error : results.errors) log << "error: " << error << '\n';
  return results.complete() ? kExitOk : kExitRuntime;
}

ListKind parse_list_kind(std::string_view text) {
  if (text == "models") return ListKind::Models;
  if (text == "functions") return ListKind::Functions;
  throw ConfigError("unknown list kind '" + std::string(text) + "' (expected models or functions)");
}

int cmd_list(ListKind kind, int dims, std::uint64_t seed, std::ostream& out) {
  if (kind == ListKind::Models) {
    out << std::left << std::setw(18) << "model" << std::setw(6) << "curve" << std::right;
    for (const char* label : {"pi/4", "pi/2", "3pi/4", "pi", "5pi/4"}) out << std::setw(8) << label;
    out << '\n';
    for (const AkbModel& model : builtin_models()) {
      for (int row = 0; row < 2; ++row) {
        const Knots& knots = row == 0 ? model.knots_start : model.knots_final;
        out << std::left << std::setw(18) << (row == 0 ? model.name : "") << std::setw(6)
            << (row == 0 ? "W_s" : "W_f") << std::right << std::fixed << std::setprecision(2);
        for (double w : knots) out << std::setw(8) << w;
        out << std::defaultfloat << '\n';
      }
    }
    return kExitOk;
  }
  const Suite suite = desk_suite(dims, seed);
  out << std::left << std::setw(48) << "problem" << std::setw(14) << "category" << "f_star\n";
  for (const BenchmarkProblem& p : suite.problems)
    out << std::setw(48) << p.name() << std::setw(14) << to_string(p.category())
        << format_double(p.f_star()) << '\n';
  return kExitOk;
}

void to_json(json& j, const MetaoptConfig& config) {
  j = json{{"suite", config.suite},
           {"variant", to_string(config.variant)},
           {"runs", config.runs},
           {"seed", config.seed},
           {"jobs", config.jobs},
           {"outer_evals", config.outer_evals},
           {"outer_particles", config.outer_particles},
           {"evals_per_dim", config.evals_per_dim},
           {"particles_per_dim", config.particles_per_dim},
           {"name", config.name},
           {"warm_start", config.warm_start}};
}

void from_json(const json& j, MetaoptConfig& config) {
  if (!j.is_object()) throw ConfigError("config must be a JSON object");
  if (j.contains("suite")) config.suite = j.at("suite").get<SuiteSpec>();
  if (j.contains("variant")) config.variant = parse_variant(j.at("variant").get<std::string>());
  read_optional(j, "runs", config.runs);
  read_optional(j, "seed", config.seed);
  read_optional(j, "jobs", config.jobs);
  read_optional(j, "outer_evals", config.outer_evals);
  read_optional(j, "outer_particles", config.outer_particles);
  read_optional(j, "evals_per_dim", config.evals_per_dim);
  read_optional(j, "particles_per_dim", config.particles_per_dim);
  read_optional(j, "name", config.name);
  read_optional(j, "warm_start", config.warm_start);
}

int cmd_metaopt(const MetaoptConfig& config, const fs::path& out_dir, std::ostream& log) {
  if (config.runs < 1) throw ConfigError("runs must be at least 1");
  if (config.jobs < 1) throw ConfigError("jobs must be at least 1");
  if (config.outer_particles < 2) throw ConfigError("outer swarm needs at least two particles");
  if (config.outer_evals < 2L * config.outer_particles)
    throw ConfigError("outer budget must cover at least two outer swarm evaluations");
  const Suite suite = make_suite(config.suite);
  if (suite.size() < 5) throw ConfigError("metaoptimization needs at least five suite problems");

  MetaoptSettings settings;
  settings.outer_evals = config.outer_evals;
  settings.outer_particles = config.outer_particles;
  settings.seed = derive_seed(config.seed, {0});
  settings.name = config.name;
  settings.inner.inner = config.variant == Variant::Tvac ? PsoConfig::tvac(suite.dims)
                                                         : PsoConfig::standard(suite.dims);
  settings.inner.runs_per_function = config.runs;
  settings.inner.evals_per_dim = config.evals_per_dim;
  settings.inner.particles_per_dim = config.particles_per_dim;
  settings.inner.seed = derive_seed(config.seed, {1});
  settings.inner.jobs = config.jobs;
  for (const std::string& source : config.warm_start) {
    AkbModel model;
    try {
      model = builtin_model(source);
    } catch (const NotFound&) {
      model = load_model(source);
    }
    settings.warm_start.push_back(encode(model));
  }

  fs::create_directories(out_dir);
  json manifest{{"command", "metaopt"}, {"started", timestamp()}, {"complete", false}};
  write_text(out_dir / "config.json", json(config).dump(2) + "\n");
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");

  log << "metaoptimizing over " << suite.size() << " problem(s), outer budget "
      << config.outer_evals << " evaluations\n";
  MetaoptResult result;
  try {
    result = metaoptimize(suite, settings);
  } catch (const std::exception& e) {
    manifest["errors"] = {e.what()};
    manifest["finished"] = timestamp();
    write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
    log << "error: " << e.what() << '\n';
    return kExitRuntime;
  }

  json provenance{
      {"outer_optimizer", "standard PSO, constant inertia 0.72, c1 = c2 = 1"},
      {"outer_evals", config.outer_evals},
      {"outer_evals_used", result.outer_evals_used},
      {"outer_particles", config.outer_particles},
      {"outer_seed", settings.seed},
      {"inner_variant", to_string(config.variant)},
      {"inner_runs_per_function", config.runs},
      {"inner_evals_per_dim", config.evals_per_dim},
      {"inner_particles_per_dim", config.particles_per_dim},
      {"inner_seed", settings.inner.seed},
      {"master_seed", config.seed},
      {"suite", {{"dims", suite.dims},
                 {"seed", suite.seed},
                 {"problems", suite.size()},
                 {"recipe_hash", fnv1a_hex(export_suite(suite).dump())}}},
      {"warm_start", config.warm_start},
      {"meta_fitness", result.best_fitness},
  };
  save_model(out_dir / "model.json", result.model, provenance);

  std::ostringstream history;
  history << "iteration,evals,best_fm\n";
  for (std::size_t t = 0; t < result.history.size(); ++t)
    history << t << ',' << static_cast<long>(t + 1) * config.outer_particles << ','
            << format_double(result.history[t]) << '\n';
  write_text(out_dir / "history.csv", history.str());

  manifest["complete"] = true;
  manifest["errors"] = json::array();
  manifest["finished"] = timestamp();
  write_text(out_dir / "manifest.json", manifest.dump(2) + "\n");
  log << "best F_M = " << format_double(result.best_fitness) << '\n';
  return kExitOk;
}

void write_model_curve(std::ostream& out, const AkbModel& model) {
  constexpr int kPointsPerSegment = 25;
  out << "theta,w_start,w_final\n";
  auto row = [&](double theta) {
    out << format_double(theta) << ',' << format_double(interpolate_knots(model.knots_start, theta))
        << ',' << format_double(interpolate_knots(model.knots_final, theta)) << '\n';
  };
  for (std::size_t j = 0; j < 4; ++j) {
    const double a = kKnotAngles[j];
    const double b = kKnotAngles[j + 1];
    for (int k = 0; k < kPointsPerSegment; ++k) row(k == 0 ? a : a + (b - a) * k / kPointsPerSegment);
  }
  row(kKnotAngles[4]);
}

TraceAggregate aggregate_traces(const std::vector<std::vector<double>>& traces) {
  TraceAggregate out;
  if (traces.empty()) return out;
  std::size_t length = traces.front().size();
  for (const auto& trace : traces) length = std::min(length, trace.size());
  std::vector<double> column(traces.size());
  for (std::size_t t = 0; t < length; ++t) {
    for (std::size_t r = 0; r < traces.size(); ++r) column[r] = traces[r][t];
    std::sort(column.begin(), column.end());
    out.q1.push_back(quantile(column, 0.25));
    out.median.push_back(quantile(column, 0.5));
    out.q3.push_back(quantile(column, 0.75));
  }
  return out;
}

int cmd_plotdata(const fs::path& results_dir, const std::vector<fs::path>& extra_models,
                 const fs::path& out_dir, std::ostream& log) {
  std::vector<AkbModel> models;
  for (const fs::path& path : extra_models) models.push_back(load_model(path));

  if (fs::exists(results_dir / "config.json")) {
    const json config = read_json(results_dir / "config.json");
    if (config.contains("variants")) {
      for (const VariantSpec& v : config.get<HarnessConfig>().variants)
        if (const auto* akb = std::get_if<AnakatabaticInertia>(&v.inertia)) models.push_back(akb->model);
    }
  }
  if (fs::exists(results_dir / "model.json")) models.push_back(load_model(results_dir / "model.json"));

  std::vector<std::pair<std::string, fs::path>> trace_sets;
  const fs::path traces = results_dir / "traces";
  if (fs::is_directory(traces)) {
    for (const auto& variant : fs::directory_iterator(traces)) {
      if (!variant.is_directory()) continue;
      for (const auto& problem : fs::directory_iterator(variant.path()))
        if (problem.is_directory())
          trace_sets.emplace_back(variant.path().filename().string() + "__" +
                                      problem.path().filename().string(),
                                  problem.path());
    }
  }
  std::sort(trace_sets.begin(), trace_sets.end());

  if (models.empty() && trace_sets.empty())
    throw ConfigError("no models or traces found in " + results_dir.string());

  std::set<std::string> written;
  if (!models.empty()) fs::create_directories(out_dir / "curves");
  for (const AkbModel& model : models) {
    const std::string name = slug(model.name);
    if (!written.insert(name).second) continue;
    std::ostringstream csv;
    write_model_curve(csv, model);
    write_text(out_dir / "curves" / (name + ".csv"), csv.str());
  }

  if (!trace_sets.empty()) fs::create_directories(out_dir / "aggregates");
  for (const auto& [name, dir] : trace_sets) {
    const TraceAggregate agg = aggregate_traces(read_traces(dir));
    std::ostringstream csv;
    csv << "iteration,median,q1,q3\n";
    for (std::size_t t = 0; t < agg.median.size(); ++t)
      csv << t << ',' << format_double(agg.median[t]) << ',' << format_double(agg.q1[t]) << ','
          << format_double(agg.q3[t]) << '\n';
    write_text(out_dir / "aggregates" / (name + ".csv"), csv.str());
  }
  log << "wrote " << written.size() << " model curve(s) and " << trace_sets.size()
      << " trace aggregate(s) to " << out_dir.string() << '\n';
  return kExitOk;
}

}  // namespace akb
