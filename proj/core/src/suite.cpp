#include "akb/suite.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace akb {

using nlohmann::json;

namespace {

constexpr double kOrthogonalityTolerance = 1e-9;

struct Block {
  double (*evaluate)(std::span<const double>);
  Eigen::Index start;
  Eigen::Index length;
};

struct TransformedImpl {
  Vector shift;
  Matrix rotation;
  double bias;
  std::vector<Block> blocks;

  double operator()(const Vector& x) const {
    const Vector z = rotation * (x - shift);
    double sum = 0.0;
    for (const Block& block : blocks)
      sum += block.evaluate(std::span<const double>(z.data() + block.start,
                                                    static_cast<std::size_t>(block.length)));
    return sum + bias;
  }
};

struct CompositionImpl {
  std::vector<ObjectiveProblem> components;
  std::vector<Vector> centers;
  std::vector<double> sigmas;

  double operator()(const Vector& x) const {
    const std::vector<double> w = composition_weights(centers, sigmas, x);
    double sum = 0.0;
    for (std::size_t i = 0; i < components.size(); ++i) {
      if (w[i] == 0.0) continue;
      if (w[i] == 1.0) return components[i].evaluate(x);
      sum += w[i] * components[i].evaluate(x);
    }
    return sum;
  }
};

SearchSpace domain(int dims) { return SearchSpace::cube(dims, -kDomainBound, kDomainBound); }

void check_transform(const Vector& shift, const Matrix& rotation) {
  const auto dims = shift.size();
  if (dims < 1) throw ConfigError("problem needs at least one dimension");
  if (rotation.rows() != dims || rotation.cols() != dims)
    throw ConfigError("rotation matrix does not match the shift dimension");
  const double deviation =
      (rotation.transpose() * rotation - Matrix::Identity(dims, dims)).cwiseAbs().maxCoeff();
  if (!(deviation < kOrthogonalityTolerance)) throw ConfigError("rotation matrix is not orthogonal");
  if (!domain(static_cast<int>(dims)).contains_strictly(shift))
    throw ConfigError("shift vector lies outside the search domain");
}

BenchmarkProblem make_transformed(const std::string& name, Category category,
                                  const std::vector<HybridPart>& parts, Vector shift,
                                  Matrix rotation, double bias) {
  check_transform(shift, rotation);
  const int dims = static_cast<int>(shift.size());
  const std::vector<int> sizes = hybrid_block_sizes(parts, dims);

  auto impl = std::make_shared<TransformedImpl>();
  impl->shift = shift;
  impl->rotation = rotation;
  impl->bias = bias;
  Eigen::Index start = 0;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    impl->blocks.push_back({base_function(parts[i].function).evaluate, start, sizes[i]});
    start += sizes[i];
  }

  ProblemRecipe recipe;
  recipe.name = name;
  recipe.category = category;
  recipe.parts = parts;
  recipe.shift = std::move(shift);
  recipe.rotation = std::move(rotation);
  recipe.bias = bias;

  ObjectiveProblem problem{name, domain(dims),
                           [impl](const Vector& x) { return (*impl)(x); }, bias};
  return {std::move(problem), std::move(recipe)};
}

Vector draw_shift(int dims, RngStream& rng) {
  Vector shift(dims);
  for (int i = 0; i < dims; ++i) shift[i] = rng.uniform(-kShiftBound, kShiftBound);
  return shift;
}

}  // namespace

std::string to_string(Category category) {
  switch (category) {
    case Category::Unimodal: return "unimodal";
    case Category::Multimodal: return "multimodal";
    case Category::Hybrid: return "hybrid";
    case Category::Composition: return "composition";
  }
  return "unknown";
}

Category parse_category(std::string_view text) {
  for (Category c : {Category::Unimodal, Category::Multimodal, Category::Hybrid, Category::Composition})
    if (to_string(c) == text) return c;
  throw ConfigError("unknown problem category: " + std::string(text));
}

Matrix random_rotation(int dims, RngStream& rng) {
  if (dims < 1) throw ContractViolation("rotation needs at least one dimension");
  Matrix gaussian(dims, dims);
  for (int i = 0; i < dims; ++i)
    for (int j = 0; j < dims; ++j) gaussian(i, j) = rng.normal();
  const Eigen::HouseholderQR<Matrix> qr(gaussian);
  Matrix q = qr.householderQ() * Matrix::Identity(dims, dims);
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < dims; ++j)
    if (r(j, j) < 0.0) q.col(j) *= -1.0;
  return q;
}

std::vector<int> hybrid_block_sizes(const std::vector<HybridPart>& parts, int dims) {
  if (parts.empty()) throw ConfigError("problem needs at least one function part");
  double total = 0.0;
  for (const HybridPart& part : parts) {
    if (!(part.fraction > 0.0)) throw ConfigError("hybrid fractions must be positive");
    total += part.fraction;
  }
  if (std::abs(total - 1.0) > 1e-9) throw ConfigError("hybrid fractions must sum to 1");

  std::vector<int> sizes(parts.size());
  int used = 0;
  for (std::size_t i = 0; i + 1 < parts.size(); ++i) {
    // The small offset keeps e.g. 0.3 * 10 from rounding up to 4.
    sizes[i] = static_cast<int>(std::ceil(parts[i].fraction * dims - 1e-9));
    used += sizes[i];
  }
  sizes.back() = dims - used;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    if (sizes[i] < 1) {
      std::ostringstream msg;
      msg << "hybrid part '" << parts[i].function << "' gets no dimensions at D = " << dims;
      throw ConfigError(msg.str());
    }
  }
  return sizes;
}

BenchmarkProblem transform(const std::string& name, const BaseFunction& base, Vector shift,
                           Matrix rotation, double bias) {
  const Category category =
      base.modality == Modality::Unimodal ? Category::Unimodal : Category::Multimodal;
  return make_transformed(name, category, {{base.name, 1.0}}, std::move(shift),
                          std::move(rotation), bias);
}

BenchmarkProblem make_hybrid(const std::string& name, const std::vector<HybridPart>& parts,
                             Vector shift, Matrix rotation, double bias) {
  return make_transformed(name, Category::Hybrid, parts, std::move(shift), std::move(rotation),
                          bias);
}

std::vector<double> composition_weights(const std::vector<Vector>& centers,
                                        const std::vector<double>& sigmas, const Vector& x) {
  const std::size_t count = centers.size();
  std::vector<double> w(count, 0.0);
  std::vector<double> dist2(count);
  std::size_t nearest = 0;
  for (std::size_t i = 0; i < count; ++i) {
    dist2[i] = (x - centers[i]).squaredNorm();
    if (dist2[i] < dist2[nearest]) nearest = i;
  }
  if (dist2[nearest] == 0.0) {
    w[nearest] = 1.0;
    return w;
  }
  const double dims = static_cast<double>(x.size());
  double total = 0.0;
  for (std::size_t i = 0; i < count; ++i) {
    w[i] = std::exp(-dist2[i] / (2.0 * dims * sigmas[i] * sigmas[i]));
    total += w[i];
  }
  if (total == 0.0) {
    std::fill(w.begin(), w.end(), 0.0);
    w[nearest] = 1.0;
    return w;
  }
  for (double& wi : w) wi /= total;
  return w;
}

BenchmarkProblem make_composition(const std::string& name,
                                  std::vector<BenchmarkProblem> components,
                                  std::vector<double> sigmas) {
  if (components.empty()) throw ConfigError("composition needs at least one component");
  if (sigmas.size() != components.size())
    throw ConfigError("composition needs one sigma per component");
  const int dims = components.front().problem.space.dims();
  for (const BenchmarkProblem& c : components)
    if (c.problem.space.dims() != dims) throw ConfigError("composition components differ in dimension");
  for (double sigma : sigmas)
    if (!(sigma > 0.0)) throw ConfigError("composition sigmas must be positive");

  std::size_t best = 0;
  for (std::size_t i = 1; i < components.size(); ++i)
    if (components[i].f_star() < components[best].f_star()) best = i;

  auto impl = std::make_shared<CompositionImpl>();
  impl->sigmas = sigmas;
  ProblemRecipe recipe;
  recipe.name = name;
  recipe.category = Category::Composition;
  recipe.shift = components[best].optimum();
  recipe.bias = components[best].f_star();
  recipe.sigmas = sigmas;
  for (BenchmarkProblem& c : components) {
    impl->components.push_back(c.problem);
    impl->centers.push_back(c.optimum());
    recipe.components.push_back(std::move(c.recipe));
  }

  const double f_star = recipe.bias;
  ObjectiveProblem problem{name, domain(dims), [impl](const Vector& x) { return (*impl)(x); },
                           f_star};
  const double at_optimum = problem.evaluate(recipe.shift);
  if (!(std::abs(at_optimum - f_star) <= 1e-6))
    throw ConfigError("composition " + name + " does not attain its optimum at the best component");
  return {std::move(problem), std::move(recipe)};
}

BenchmarkProblem build(const ProblemRecipe& recipe) {
  if (recipe.category == Category::Composition) {
    std::vector<BenchmarkProblem> components;
    for (const ProblemRecipe& c : recipe.components) components.push_back(build(c));
    return make_composition(recipe.name, std::move(components), recipe.sigmas);
  }
  return make_transformed(recipe.name, recipe.category, recipe.parts, recipe.shift,
                          recipe.rotation, recipe.bias);
}

Suite desk_suite(int dims, std::uint64_t seed) {
  if (dims < 2) throw ConfigError("desk suite needs D >= 2");

  struct Entry {
    const char* name;
    Category category;
    std::vector<HybridPart> parts;
  };
  const std::vector<Entry> plain = {
      {"F01_bent_cigar", Category::Unimodal, {{"bent_cigar", 1.0}}},
      {"F02_discus", Category::Unimodal, {{"discus", 1.0}}},
      {"F03_sphere", Category::Unimodal, {{"sphere", 1.0}}},
      {"F04_rosenbrock", Category::Multimodal, {{"rosenbrock", 1.0}}},
      {"F05_ackley", Category::Multimodal, {{"ackley", 1.0}}},
      {"F06_weierstrass", Category::Multimodal, {{"weierstrass", 1.0}}},
      {"F07_rastrigin", Category::Multimodal, {{"rastrigin", 1.0}}},
      {"F08_schwefel", Category::Multimodal, {{"schwefel", 1.0}}},
      {"F09_hybrid_cigar_rastrigin", Category::Hybrid, {{"bent_cigar", 0.3}, {"rastrigin", 0.7}}},
      {"F10_hybrid_discus_griewank", Category::Hybrid, {{"discus", 0.4}, {"griewank", 0.6}}},
  };
  struct CompositionEntry {
    const char* name;
    std::vector<const char*> functions;
    std::vector<double> sigmas;
  };
  const std::vector<CompositionEntry> compositions = {
      {"F11_composition_rosenbrock_sphere_rastrigin", {"rosenbrock", "sphere", "rastrigin"}, {10, 20, 30}},
      {"F12_composition_ackley_griewank_schwefel", {"ackley", "griewank", "schwefel"}, {10, 20, 30}},
  };

  Suite suite;
  suite.dims = dims;
  suite.seed = seed;
  std::uint64_t index = 0;
  for (const Entry& e : plain) {
    RngStream rng(derive_seed(seed, {index}));
    Vector shift = draw_shift(dims, rng);
    Matrix rotation = random_rotation(dims, rng);
    suite.problems.push_back(make_transformed(e.name, e.category, e.parts, std::move(shift),
                                              std::move(rotation), 100.0 * (index + 1)));
    ++index;
  }
  for (const CompositionEntry& e : compositions) {
    std::vector<BenchmarkProblem> components;
    for (std::size_t j = 0; j < e.functions.size(); ++j) {
      RngStream rng(derive_seed(seed, {index, j + 1}));
      Vector shift = draw_shift(dims, rng);
      Matrix rotation = random_rotation(dims, rng);
      const BaseFunction& base = base_function(e.functions[j]);
      components.push_back(transform(std::string(e.name) + "/" + base.name, base, std::move(shift),
                                     std::move(rotation), 100.0 * (index + 1) + 100.0 * j));
    }
    suite.problems.push_back(make_composition(e.name, std::move(components), e.sigmas));
    ++index;
  }
  return suite;
}

Suite truncate(const Suite& suite, std::size_t count) {
  Suite out = suite;
  if (count > 0 && count < out.problems.size())
    out.problems.erase(out.problems.begin() + static_cast<std::ptrdiff_t>(count), out.problems.end());
  return out;
}

void to_json(json& j, const ProblemRecipe& recipe) {
  j = json{{"name", recipe.name}, {"category", to_string(recipe.category)}, {"bias", recipe.bias}};
  j["shift"] = std::vector<double>(recipe.shift.data(), recipe.shift.data() + recipe.shift.size());
  if (recipe.category == Category::Composition) {
    j["sigmas"] = recipe.sigmas;
    j["components"] = recipe.components;
    return;
  }
  json parts = json::array();
  for (const HybridPart& part : recipe.parts)
    parts.push_back({{"function", part.function}, {"fraction", part.fraction}});
  j["parts"] = parts;
  json rows = json::array();
  for (Eigen::Index r = 0; r < recipe.rotation.rows(); ++r) {
    json row = json::array();
    for (Eigen::Index c = 0; c < recipe.rotation.cols(); ++c) row.push_back(recipe.rotation(r, c));
    rows.push_back(row);
  }
  j["rotation"] = rows;
}

void from_json(const json& j, ProblemRecipe& recipe) {
  try {
    recipe.name = j.at("name").get<std::string>();
    recipe.category = parse_category(j.at("category").get<std::string>());
    recipe.bias = j.at("bias").get<double>();
    const auto shift = j.at("shift").get<std::vector<double>>();
    recipe.shift = Eigen::Map<const Vector>(shift.data(), static_cast<Eigen::Index>(shift.size()));
    if (recipe.category == Category::Composition) {
      recipe.sigmas = j.at("sigmas").get<std::vector<double>>();
      recipe.components = j.at("components").get<std::vector<ProblemRecipe>>();
      return;
    }
    recipe.parts.clear();
    for (const json& part : j.at("parts"))
      recipe.parts.push_back({part.at("function").get<std::string>(), part.at("fraction").get<double>()});
    const json& rows = j.at("rotation");
    const auto dims = static_cast<Eigen::Index>(rows.size());
    recipe.rotation.resize(dims, dims);
    for (Eigen::Index r = 0; r < dims; ++r) {
      if (static_cast<Eigen::Index>(rows.at(r).size()) != dims)
        throw ConfigError("recipe rotation matrix is not square");
      for (Eigen::Index c = 0; c < dims; ++c) recipe.rotation(r, c) = rows.at(r).at(c).get<double>();
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed problem recipe: ") + e.what());
  }
}

json export_suite(const Suite& suite) {
  json problems = json::array();
  for (const BenchmarkProblem& p : suite.problems) problems.push_back(p.recipe);
  return json{{"dims", suite.dims},
              {"seed", suite.seed},
              {"domain", {-kDomainBound, kDomainBound}},
              {"problems", problems}};
}

Suite import_suite(const json& j) {
  Suite suite;
  try {
    suite.dims = j.at("dims").get<int>();
    suite.seed = j.at("seed").get<std::uint64_t>();
    for (const json& p : j.at("problems")) {
      suite.problems.push_back(build(p.get<ProblemRecipe>()));
      if (suite.problems.back().problem.space.dims() != suite.dims)
        throw ConfigError("recipe problem dimension differs from suite dimension");
    }
  } catch (const json::exception& e) {
    throw ConfigError(std::string("malformed suite recipe: ") + e.what());
  }
  return suite;
}

}  // namespace akb
