#pragma once

#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace akb {

enum class Modality { Unimodal, Multimodal };

/// Unshifted, unrotated test function with its global minimum 0 at the origin.
/// Input scaling (e.g. 5.12/100 for Rastrigin) is part of the function so that
/// every base accepts coordinates on the [-100, 100] scale.
struct BaseFunction {
  std::string name;
  Modality modality;
  double (*evaluate)(std::span<const double> z);
};

namespace fn {

/// sum z_i^2
double sphere(std::span<const double> z);
/// z_1^2 + 1e6 sum_{i>1} z_i^2
double bent_cigar(std::span<const double> z);
/// 1e6 z_1^2 + sum_{i>1} z_i^2
double discus(std::span<const double> z);
/// Rosenbrock on u = 0.02048 z + 1, so the valley minimum sits at z = 0.
double rosenbrock(std::span<const double> z);
double ackley(std::span<const double> z);
/// Rastrigin on u = 0.0512 z.
double rastrigin(std::span<const double> z);
/// Griewank on u = 6 z.
double griewank(std::span<const double> z);
/// CEC-style modified Schwefel on u = 10 z + 420.9687..., with the folding
/// penalty outside [-500, 500] and the optimum value subtracted exactly.
double schwefel(std::span<const double> z);
/// Weierstrass (a = 0.5, b = 3, k <= 20) on u = 0.005 z.
double weierstrass(std::span<const double> z);

}  // namespace fn

const std::vector<BaseFunction>& base_catalog();

/// Throws NotFound for unknown names.
const BaseFunction& base_function(std::string_view name);

}  // namespace akb
