#pragma once

#include "akb/types.hpp"

#include <memory>
#include <vector>

namespace akb::test {

inline ObjectiveProblem sphere_problem(int dims, double lo = -1.0, double hi = 1.0) {
  return {"sphere", SearchSpace::cube(dims, lo, hi), [](const Vector& x) { return x.squaredNorm(); },
          0.0};
}

/// Wraps a problem and records every evaluated value (single-threaded use only).
struct EvaluationLog {
  std::shared_ptr<std::vector<double>> values = std::make_shared<std::vector<double>>();

  ObjectiveProblem wrap(ObjectiveProblem problem) const {
    auto inner = problem.evaluate;
    auto sink = values;
    problem.evaluate = [inner, sink](const Vector& x) {
      const double f = inner(x);
      sink->push_back(f);
      return f;
    };
    return problem;
  }
};

}  // namespace akb::test
