#include "akb/functions.hpp"

#include "akb/types.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace akb {

namespace fn {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

constexpr double kSchwefelOffset = 4.209687462275036e+002;

double schwefel_term(double u, double dims) {
  if (u > 500.0) {
    const double folded = 500.0 - std::fmod(u, 500.0);
    return folded * std::sin(std::sqrt(folded)) - (u - 500.0) * (u - 500.0) / (10000.0 * dims);
  }
  if (u < -500.0) {
    const double folded = std::fmod(std::abs(u), 500.0) - 500.0;
    return folded * std::sin(std::sqrt(std::abs(folded))) -
           (u + 500.0) * (u + 500.0) / (10000.0 * dims);
  }
  return u * std::sin(std::sqrt(std::abs(u)));
}

struct WeierstrassTable {
  static constexpr int kTerms = 21;
  std::array<double, kTerms> a_pow{};
  std::array<double, kTerms> b_pow{};

  WeierstrassTable() {
    double a = 1.0;
    double b = 1.0;
    for (int k = 0; k < kTerms; ++k) {
      a_pow[k] = a;
      b_pow[k] = b;
      a *= 0.5;
      b *= 3.0;
    }
  }

  double h(double u) const {
    double sum = 0.0;
    for (int k = 0; k < kTerms; ++k) sum += a_pow[k] * std::cos(kTwoPi * b_pow[k] * (u + 0.5));
    return sum;
  }
};

const WeierstrassTable& weierstrass_table() {
  static const WeierstrassTable table;
  return table;
}

}  // namespace

double sphere(std::span<const double> z) {
  double sum = 0.0;
  for (double v : z) sum += v * v;
  return sum;
}

double bent_cigar(std::span<const double> z) {
  double tail = 0.0;
  for (std::size_t i = 1; i < z.size(); ++i) tail += z[i] * z[i];
  return z[0] * z[0] + 1e6 * tail;
}

double discus(std::span<const double> z) {
  double tail = 0.0;
  for (std::size_t i = 1; i < z.size(); ++i) tail += z[i] * z[i];
  return 1e6 * z[0] * z[0] + tail;
}

double rosenbrock(std::span<const double> z) {
  double sum = 0.0;
  for (std::size_t i = 0; i + 1 < z.size(); ++i) {
    const double s = 0.02048 * z[i];
    const double u = s + 1.0;
    const double u_next = 0.02048 * z[i + 1] + 1.0;
    const double valley = u * u - u_next;
    sum += 100.0 * valley * valley + s * s;
  }
  return sum;
}

double ackley(std::span<const double> z) {
  static const double e = std::exp(1.0);
  double sq = 0.0;
  double cs = 0.0;
  for (double v : z) {
    sq += v * v;
    cs += std::cos(kTwoPi * v);
  }
  const double n = static_cast<double>(z.size());
  return 20.0 * (1.0 - std::exp(-0.2 * std::sqrt(sq / n))) + (e - std::exp(cs / n));
}

double rastrigin(std::span<const double> z) {
  double sum = 0.0;
  for (double v : z) {
    const double u = 0.0512 * v;
    sum += u * u - 10.0 * std::cos(kTwoPi * u) + 10.0;
  }
  return sum;
}

double griewank(std::span<const double> z) {
  double sq = 0.0;
  double prod = 1.0;
  for (std::size_t i = 0; i < z.size(); ++i) {
    const double u = 6.0 * z[i];
    sq += u * u;
    prod *= std::cos(u / std::sqrt(static_cast<double>(i + 1)));
  }
  return sq / 4000.0 - prod + 1.0;
}

double schwefel(std::span<const double> z) {
  const double dims = static_cast<double>(z.size());
  const double peak = schwefel_term(kSchwefelOffset, dims);
  double sum = 0.0;
  for (double v : z) sum += peak - schwefel_term(10.0 * v + kSchwefelOffset, dims);
  return sum;
}

double weierstrass(std::span<const double> z) {
  const WeierstrassTable& table = weierstrass_table();
  static const double floor_value = table.h(0.0);
  double sum = 0.0;
  for (double v : z) sum += table.h(0.005 * v) - floor_value;
  return sum;
}

}  // namespace fn

const std::vector<BaseFunction>& base_catalog() {
  static const std::vector<BaseFunction> catalog = {
      {"sphere", Modality::Unimodal, &fn::sphere},
      {"bent_cigar", Modality::Unimodal, &fn::bent_cigar},
      {"discus", Modality::Unimodal, &fn::discus},
      {"rosenbrock", Modality::Multimodal, &fn::rosenbrock},
      {"ackley", Modality::Multimodal, &fn::ackley},
      {"rastrigin", Modality::Multimodal, &fn::rastrigin},
      {"griewank", Modality::Multimodal, &fn::griewank},
      {"schwefel", Modality::Multimodal, &fn::schwefel},
      {"weierstrass", Modality::Multimodal, &fn::weierstrass},
  };
  return catalog;
}

const BaseFunction& base_function(std::string_view name) {
  for (const BaseFunction& base : base_catalog())
    if (base.name == name) return base;
  throw NotFound("unknown base function: " + std::string(name));
}

}  // namespace akb
