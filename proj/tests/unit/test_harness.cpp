#include "akb/harness.hpp"
#include "akb/model_io.hpp"

#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>

using namespace akb;
namespace fs = std::filesystem;

namespace {

fs::path scratch(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("akb_test_" + name);
  fs::remove_all(dir);
  return dir;
}

std::string slurp(const fs::path& path) {
  std::ifstream in(path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

HarnessConfig tiny_config() {
  HarnessConfig c = HarnessConfig::defaults();
  c.suite.dims = 2;
  c.suite.problems = 5;
  c.runs = 3;
  c.evals_per_dim = 100;
  return c;
}

}  // namespace

TEST_CASE("default config and validation") {
  const HarnessConfig d = HarnessConfig::defaults();
  REQUIRE(d.variants.size() == 2);
  CHECK(d.variants[0].variant == Variant::Tvac);
  CHECK(std::holds_alternative<LdiwInertia>(d.variants[0].inertia));
  const auto* akb = std::get_if<AnakatabaticInertia>(&d.variants[1].inertia);
  REQUIRE(akb != nullptr);
  CHECK(akb->model == builtin_model("Rightward Peaks"));

  HarnessConfig bad = d;
  bad.variants[1].name = bad.variants[0].name;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = d;
  bad.runs = 0;
  CHECK_THROWS_AS(bad.validate(), ConfigError);
  bad = d;
  bad.variants[0].name = "a/b";
  CHECK_THROWS_AS(bad.validate(), ConfigError);
}

TEST_CASE("config json round trip") {
  HarnessConfig c = tiny_config();
  c.variants[0].c1 = 1.25;
  const nlohmann::json j = c;
  const HarnessConfig back = j.get<HarnessConfig>();
  CHECK(nlohmann::json(back) == j);
  CHECK(back.variants[0].c1 == 1.25);
  CHECK_THROWS(nlohmann::json::parse(R"({"variants": [{"name": "x", "variant": "warp"}]})").get<HarnessConfig>());
}

TEST_CASE("run command writes results") {
  const fs::path out = scratch("run");
  std::ostringstream log;
  const HarnessConfig c = tiny_config();
  REQUIRE(cmd_run(c, out, log) == kExitOk);
  for (const char* f : {"config.json", "suite.json", "runs.csv", "summary.csv", "manifest.json"})
    CHECK(fs::exists(out / f));
  const std::string runs = slurp(out / "runs.csv");
  CHECK(runs.rfind("problem,variant,model,seed,final_best,eps,evals\n", 0) == 0);
  CHECK(count_lines(runs) == 1 + 2 * 5 * 3);
  CHECK(count_lines(slurp(out / "summary.csv")) == 1 + 5 + 1);
  const fs::path trace = out / "traces" / c.variants[1].name / "F01_bent_cigar" / "run_0002.csv";
  REQUIRE(fs::exists(trace));
  // 200 evaluations with 6 particles: initialization plus 32 iterations
  CHECK(count_lines(slurp(trace)) == 1 + 33);
}

TEST_CASE("results do not depend on the job count") {
  HarnessConfig serial = tiny_config();
  serial.write_traces = false;
  HarnessConfig threaded = serial;
  threaded.jobs = 8;
  std::ostringstream a;
  std::ostringstream b;
  write_runs_csv(a, serial, run_experiment(serial));
  write_runs_csv(b, threaded, run_experiment(threaded));
  CHECK(a.str() == b.str());
}

TEST_CASE("single variant run has no summary") {
  const fs::path out = scratch("single");
  HarnessConfig c = tiny_config();
  c.variants.resize(1);
  std::ostringstream log;
  REQUIRE(cmd_run(c, out, log) == kExitOk);
  CHECK(!fs::exists(out / "summary.csv"));
  CHECK(nlohmann::json::parse(slurp(out / "manifest.json"))["summary"].is_null());
}

TEST_CASE("list command") {
  std::ostringstream models;
  CHECK(cmd_list(ListKind::Models, 10, 42, models) == kExitOk);
  for (const AkbModel& m : builtin_models()) CHECK(models.str().find(m.name) != std::string::npos);
  std::ostringstream functions;
  CHECK(cmd_list(ListKind::Functions, 10, 42, functions) == kExitOk);
  CHECK(functions.str().find("F12_composition_ackley_griewank_schwefel") != std::string::npos);
  CHECK_THROWS_AS(parse_list_kind("widgets"), ConfigError);
}

TEST_CASE("metaopt command and model files") {
  const fs::path out = scratch("metaopt");
  MetaoptConfig c;
  c.suite = SuiteSpec{2, 3, std::nullopt, 5};
  c.runs = 2;
  c.outer_evals = 40;
  c.outer_particles = 5;
  c.evals_per_dim = 100;
  c.warm_start = {"Rightward Peaks"};
  std::ostringstream log;
  REQUIRE(cmd_metaopt(c, out, log) == kExitOk);
  const AkbModel model = load_model(out / "model.json");
  CHECK(model.name == "discovered");
  const nlohmann::json j = nlohmann::json::parse(slurp(out / "model.json"));
  CHECK(j.contains("provenance"));
  const std::string history = slurp(out / "history.csv");
  CHECK(history.rfind("iteration,evals,best_fm\n", 0) == 0);
  CHECK(count_lines(history) == 1 + 8);

  // the discovered model can warm-start the next generation
  const fs::path out2 = scratch("metaopt2");
  c.warm_start = {(out / "model.json").string()};
  REQUIRE(cmd_metaopt(c, out2, log) == kExitOk);
  c.warm_start = {"No Such Model"};
  CHECK_THROWS(cmd_metaopt(c, scratch("metaopt3"), log));
}

TEST_CASE("model curves hit the knots") {
  const AkbModel m = builtin_model("Origami Snake");
  std::ostringstream out;
  write_model_curve(out, m);
  std::istringstream in(out.str());
  std::string line;
  std::getline(in, line);
  CHECK(line == "theta,w_start,w_final");
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::istringstream cells(line);
    std::string cell;
    while (std::getline(cells, cell, ',')) row.push_back(std::stod(cell));
    rows.push_back(row);
  }
  REQUIRE(rows.size() == 101);
  for (std::size_t j = 0; j < 5; ++j) {
    const auto& row = rows[25 * j];
    CHECK(row[0] == kKnotAngles[j]);
    CHECK(row[1] == m.knots_start[j]);
    CHECK(row[2] == m.knots_final[j]);
  }
}

TEST_CASE("trace aggregation") {
  const std::vector<std::vector<double>> same(4, std::vector<double>{5.0, 3.0, 1.0});
  const TraceAggregate a = aggregate_traces(same);
  CHECK(a.median == std::vector<double>{5.0, 3.0, 1.0});
  CHECK(a.q1 == a.q3);
  const TraceAggregate b = aggregate_traces({{1.0}, {2.0}, {3.0}, {4.0}, {5.0}});
  CHECK(b.median[0] == 3.0);
  CHECK(b.q1[0] == 2.0);
  CHECK(b.q3[0] == 4.0);
}

TEST_CASE("plotdata command") {
  const fs::path results = scratch("plot_results");
  HarnessConfig c = tiny_config();
  c.suite.problems = 5;
  std::ostringstream log;
  REQUIRE(cmd_run(c, results, log) == kExitOk);
  const fs::path out = scratch("plot_out");
  REQUIRE(cmd_plotdata(results, {}, out, log) == kExitOk);
  CHECK(fs::exists(out / "curves" / "Rightward_Peaks.csv"));
  CHECK(fs::exists(out / "aggregates" / (c.variants[0].name + "__F03_sphere.csv")));

  const fs::path empty = scratch("plot_empty");
  fs::create_directories(empty);
  CHECK_THROWS_AS(cmd_plotdata(empty, {}, scratch("plot_none"), log), ConfigError);
}
