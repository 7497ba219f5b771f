#pragma once

#include "akb/functions.hpp"
#include "akb/rng.hpp"
#include "akb/types.hpp"

#include <nlohmann/json.hpp>

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

namespace akb {

enum class Category { Unimodal, Multimodal, Hybrid, Composition };

std::string to_string(Category category);
Category parse_category(std::string_view text);

/// Every suite problem lives on [-100, 100]^D.
inline constexpr double kDomainBound = 100.0;
/// Shifts are drawn from [-80, 80]^D so optima stay interior.
inline constexpr double kShiftBound = 80.0;

struct HybridPart {
  std::string function;
  double fraction = 1.0;
};

/// Complete description of a suite problem. Serializing it (see to_json)
/// is enough to rebuild the problem bit-exactly.
struct ProblemRecipe {
  std::string name;
  Category category = Category::Unimodal;
  /// One part for plain transformed functions, several for hybrids.
  std::vector<HybridPart> parts;
  Vector shift;
  Matrix rotation;
  double bias = 0.0;
  /// Composition only.
  std::vector<ProblemRecipe> components;
  std::vector<double> sigmas;
};

/// A built problem plus the recipe that produced it.
struct BenchmarkProblem {
  ObjectiveProblem problem;
  ProblemRecipe recipe;

  const std::string& name() const { return problem.name; }
  double f_star() const { return *problem.f_star; }
  Category category() const { return recipe.category; }
  /// Location of the global minimum.
  const Vector& optimum() const { return recipe.shift; }
  double operator()(const Vector& x) const { return problem.evaluate(x); }
};

/// Haar-distributed orthogonal matrix: QR of a Gaussian matrix with the
/// signs of R's diagonal folded into Q.
Matrix random_rotation(int dims, RngStream& rng);

/// evaluate(x) = base(M (x - o)) + bias.
BenchmarkProblem transform(const std::string& name, const BaseFunction& base, Vector shift,
                           Matrix rotation, double bias);

/// Splits z = M (x - o) into contiguous blocks sized by `parts` fractions and
/// sums each part's base function over its block. Block sizes are
/// ceil(fraction * D) for every part but the last, which takes the remainder.
BenchmarkProblem make_hybrid(const std::string& name, const std::vector<HybridPart>& parts,
                             Vector shift, Matrix rotation, double bias);

/// Block sizes make_hybrid would use; throws ConfigError when a part would be empty.
std::vector<int> hybrid_block_sizes(const std::vector<HybridPart>& parts, int dims);

/// Gaussian-distance blend sum_i w_i f_i(x) with
/// w_i ~ exp(-|x - o_i|^2 / (2 D sigma_i^2)), normalized to sum 1.
/// f* is the smallest component bias, attained at that component's shift.
BenchmarkProblem make_composition(const std::string& name,
                                  std::vector<BenchmarkProblem> components,
                                  std::vector<double> sigmas);

/// Composition weights at x (sum to 1). Exposed for inspection and tests.
std::vector<double> composition_weights(const std::vector<Vector>& centers,
                                        const std::vector<double>& sigmas, const Vector& x);

/// Rebuilds any problem from its recipe.
BenchmarkProblem build(const ProblemRecipe& recipe);

struct Suite {
  int dims = 0;
  std::uint64_t seed = 0;
  std::vector<BenchmarkProblem> problems;

  std::size_t size() const { return problems.size(); }
};

/// Twelve problems on [-100, 100]^D with f* = 100 (i + 1):
///   F01-F03 unimodal: bent cigar, discus, sphere
///   F04-F08 multimodal: rosenbrock, ackley, weierstrass, rastrigin, schwefel
///   F09-F10 hybrid: (bent cigar .3, rastrigin .7), (discus .4, griewank .6)
///   F11-F12 composition: (rosenbrock, sphere, rastrigin; sigma 10/20/30),
///                        (ackley, griewank, schwefel; sigma 10/20/30)
/// Every problem is shifted and rotated with draws from derive_seed(seed, {i}).
Suite desk_suite(int dims, std::uint64_t seed);

/// First `count` problems of a suite (metaoptimization smoke runs).
Suite truncate(const Suite& suite, std::size_t count);

void to_json(nlohmann::json& j, const ProblemRecipe& recipe);
void from_json(const nlohmann::json& j, ProblemRecipe& recipe);

nlohmann::json export_suite(const Suite& suite);
Suite import_suite(const nlohmann::json& j);

}  // namespace akb
