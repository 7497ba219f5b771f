#pragma once

#include "akb/types.hpp"

#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace akb {

/// Errors are floored here before any logarithm so zero errors stay finite.
inline constexpr double kErrorFloor = 1e-300;

struct FunctionResult {
  std::string problem;
  double f_star = 0.0;
  std::vector<RunRecord> records;
};

/// Mean final best over the records minus f*, floored at kErrorFloor.
double epsilon_hat(std::span<const RunRecord> records, double f_star);
double epsilon_hat(const FunctionResult& result);

/// Paired rating in [-2, 2]; positive when the anakatabatic error eps_xa is smaller.
double alpha(double eps_x, double eps_xa);

/// log10(eps_x / eps_xa): improvement in orders of magnitude.
double omega(double eps_x, double eps_xa);

struct ComparisonRow {
  std::string problem;
  double eps_x = 0.0;
  double eps_xa = 0.0;
  double alpha = 0.0;
  double omega = 0.0;
};

struct SuiteComparison {
  double alpha_avg = 0.0;
  double omega_avg = 0.0;
  std::vector<ComparisonRow> rows;
};

/// Per-function alpha and omega for a baseline (x) and anakatabatic (xa)
/// result set over the same ordered problems, plus unweighted means.
SuiteComparison compare_suite(std::span<const FunctionResult> results_x,
                              std::span<const FunctionResult> results_xa);

/// problem,eps_x,eps_xa,alpha,omega rows followed by an AVERAGE row.
void write_comparison_csv(std::ostream& out, const SuiteComparison& comparison);

/// Shortest round-trip decimal form of a double.
std::string format_double(double value);

}  // namespace akb
