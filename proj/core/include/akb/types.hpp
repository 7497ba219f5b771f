#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace akb {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

/// Caller broke a documented precondition.
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Invalid user-supplied configuration (bounds, recipes, config files).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Lookup by name failed (models, base functions).
class NotFound : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An objective returned NaN or infinity. Runs abort instead of patching the value.
class NonFiniteFitness : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Box-constrained search domain.
class SearchSpace {
 public:
  SearchSpace(Vector lower, Vector upper);

  /// Same [lo, hi] interval in every dimension.
  static SearchSpace cube(int dims, double lo, double hi);

  int dims() const { return static_cast<int>(lower_.size()); }
  const Vector& lower() const { return lower_; }
  const Vector& upper() const { return upper_; }
  Vector width() const { return upper_ - lower_; }

  bool contains(const Vector& x) const;
  bool contains_strictly(const Vector& x) const;

 private:
  Vector lower_;
  Vector upper_;
};

/// A minimization problem. `evaluate` must be pure and safe to call
/// concurrently from independent runs.
struct ObjectiveProblem {
  std::string name;
  SearchSpace space;
  std::function<double(const Vector&)> evaluate;
  std::optional<double> f_star;
};

/// Outcome of a single seeded optimizer run.
struct RunRecord {
  double final_best = 0.0;
  /// Global-best fitness after initialization (entry 0) and after every iteration.
  std::vector<double> trace;
  long evals_used = 0;
  std::uint64_t seed = 0;
};

}  // namespace akb
