#include "akb/metrics.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <numeric>

namespace akb {

double epsilon_hat(std::span<const RunRecord> records, double f_star) {
  if (records.empty()) throw ContractViolation("epsilon_hat needs at least one run");
  double sum = 0.0;
  for (const RunRecord& r : records) sum += r.final_best;
  const double mean = sum / static_cast<double>(records.size());
  return std::max(mean - f_star, kErrorFloor);
}

double epsilon_hat(const FunctionResult& result) {
  return epsilon_hat(result.records, result.f_star);
}

double alpha(double eps_x, double eps_xa) {
  if (!(eps_x > 0.0) || !(eps_xa > 0.0)) throw ContractViolation("alpha needs positive errors");
  // Keep r <= 1 so huge error ratios cannot overflow.
  if (eps_xa > eps_x) return -alpha(eps_xa, eps_x);
  const double r = eps_xa / eps_x;
  return 2.0 * (1.0 - r) / (1.0 + r);
}

double omega(double eps_x, double eps_xa) {
  if (!(eps_x > 0.0) || !(eps_xa > 0.0)) throw ContractViolation("omega needs positive errors");
  return std::log10(eps_x) - std::log10(eps_xa);
}

SuiteComparison compare_suite(std::span<const FunctionResult> results_x,
                              std::span<const FunctionResult> results_xa) {
  if (results_x.size() != results_xa.size())
    throw ContractViolation("compared result sets cover different problem counts");
  if (results_x.empty()) throw ContractViolation("nothing to compare");
  SuiteComparison out;
  for (std::size_t i = 0; i < results_x.size(); ++i) {
    if (results_x[i].problem != results_xa[i].problem)
      throw ContractViolation("compared result sets list different problems");
    ComparisonRow row;
    row.problem = results_x[i].problem;
    row.eps_x = epsilon_hat(results_x[i]);
    row.eps_xa = epsilon_hat(results_xa[i]);
    row.alpha = alpha(row.eps_x, row.eps_xa);
    row.omega = omega(row.eps_x, row.eps_xa);
    out.alpha_avg += row.alpha;
    out.omega_avg += row.omega;
    out.rows.push_back(std::move(row));
  }
  out.alpha_avg /= static_cast<double>(out.rows.size());
  out.omega_avg /= static_cast<double>(out.rows.size());
  return out;
}

void write_comparison_csv(std::ostream& out, const SuiteComparison& comparison) {
  out << "problem,eps_x,eps_xa,alpha,omega\n";
  for (const ComparisonRow& row : comparison.rows)
    out << row.problem << ',' << format_double(row.eps_x) << ',' << format_double(row.eps_xa)
        << ',' << format_double(row.alpha) << ',' << format_double(row.omega) << '\n';
  out << "AVERAGE,,," << format_double(comparison.alpha_avg) << ','
      << format_double(comparison.omega_avg) << '\n';
}

std::string format_double(double value) {
  char buffer[32];
  const auto [end, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, end);
}

}  // namespace akb
