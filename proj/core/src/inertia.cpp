#include "akb/inertia.hpp"

#include "akb/types.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <limits>
#include <sstream>

namespace akb {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kNearZeroTheta = 1e-300;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double blend(double start, double final_value, double tau) {
  if (start == final_value) return start;
  return (1.0 - tau) * start + tau * final_value;
}

void check_iteration(int t, int t_max) {
  if (t < 0 || t > t_max) throw ContractViolation("iteration outside [0, t_max]");
}

bool iequals(std::string_view a, std::string_view b) {
  return a.size() == b.size() &&
         std::equal(a.begin(), a.end(), b.begin(), [](char x, char y) {
           return std::tolower(static_cast<unsigned char>(x)) ==
                  std::tolower(static_cast<unsigned char>(y));
         });
}

}  // namespace

std::string describe(const InertiaStrategy& strategy) {
  std::ostringstream out;
  std::visit(overloaded{
                 [&](const ConstantInertia& s) { out << "constant(" << s.w << ")"; },
                 [&](const LdiwInertia& s) { out << "ldiw(" << s.w_min << "," << s.w_max << ")"; },
                 [&](const LanguidInertia& s) { out << "languid(" << s.w0 << ")"; },
                 [&](const AnakatabaticInertia& s) { out << s.model.name; },
             },
             strategy);
  return out.str();
}

void validate(const InertiaStrategy& strategy) {
  std::visit(overloaded{
                 [](const ConstantInertia& s) {
                   if (!std::isfinite(s.w)) throw ConfigError("constant inertia must be finite");
                 },
                 [](const LdiwInertia& s) {
                   if (!std::isfinite(s.w_min) || !std::isfinite(s.w_max))
                     throw ConfigError("LDIW bounds must be finite");
                   if (s.w_min > s.w_max) throw ConfigError("LDIW requires w_min <= w_max");
                 },
                 [](const LanguidInertia& s) {
                   if (!std::isfinite(s.w0)) throw ConfigError("languid w0 must be finite");
                 },
                 [](const AnakatabaticInertia& s) {
                   for (double w : s.model.knots_start)
                     if (!std::isfinite(w)) throw ConfigError("model knots must be finite");
                   for (double w : s.model.knots_final)
                     if (!std::isfinite(w)) throw ConfigError("model knots must be finite");
                 },
             },
             strategy);
}

FitnessDeltas FitnessDeltas::from(std::vector<double> delta) {
  if (delta.empty()) throw ContractViolation("fitness deltas need at least one particle");
  FitnessDeltas out;
  out.min_delta = *std::min_element(delta.begin(), delta.end());
  out.delta = std::move(delta);
  return out;
}

Theta compute_theta(double delta_k, double min_delta, RngStream& rng) {
  if (!(min_delta <= delta_k)) throw ContractViolation("compute_theta requires min_delta <= delta_k");
  // Signed zeros would otherwise send (0, 0) to different quadrants.
  if (delta_k == 0.0) delta_k = 0.0;
  if (min_delta == 0.0) min_delta = 0.0;

  double theta = std::atan2(delta_k, min_delta);
  if (theta < 0.0) theta += 2.0 * kPi;
  if (std::abs(theta) < kNearZeroTheta) return {rng.uniform(kThetaMin, kThetaMax), true};

  // atan2 of extreme ratios rounds onto pi/2 or pi; keep the sign-implied sector.
  if (delta_k < 0.0) {
    theta = std::max(theta, std::nextafter(kPi, 4.0));
  } else if (min_delta < 0.0) {
    theta = std::clamp(theta, std::nextafter(kPi / 2.0, 4.0), kPi);
  } else {
    theta = std::clamp(theta, kThetaMin, kPi / 2.0);
  }
  return {std::clamp(theta, kThetaMin, kThetaMax), false};
}

Advancement classify_advancement(double theta) {
  if (!(theta >= kThetaMin && theta <= kThetaMax))
    throw ContractViolation("theta outside [pi/4, 5pi/4]");
  if (theta <= kPi / 2.0) return Advancement::AllFailed;
  if (theta <= kPi) return Advancement::SwarmImprovedParticleNot;
  return Advancement::ParticleImproved;
}

double interpolate_knots(const Knots& knots, double theta) {
  if (!(theta >= kThetaMin && theta <= kThetaMax))
    throw ContractViolation("theta outside [pi/4, 5pi/4]");
  std::size_t j = 0;
  while (j < 3 && theta >= kKnotAngles[j + 1]) ++j;
  const double lambda = (theta - kKnotAngles[j]) / (kKnotAngles[j + 1] - kKnotAngles[j]);
  return blend(knots[j], knots[j + 1], lambda);
}

double akb_weight(const AkbModel& model, double theta, int t, int t_max) {
  check_iteration(t, t_max);
  const double start = interpolate_knots(model.knots_start, theta);
  if (t_max == 0) return start;
  const double final_value = interpolate_knots(model.knots_final, theta);
  return blend(start, final_value, static_cast<double>(t) / t_max);
}

double LanguidStep::operator()(double theta) const { return theta > kPi ? w0 + 0.05 : 0.0; }

double LanguidStep::operator()(const Theta& theta) const {
  return theta.randomized ? 0.0 : (*this)(theta.angle);
}

LanguidStep languid_model(double w0) { return LanguidStep{w0}; }

double ldiw_weight(double w_min, double w_max, int t, int t_max) {
  if (t_max < 1) throw ContractViolation("LDIW needs t_max >= 1");
  check_iteration(t, t_max);
  return blend(w_max, w_min, static_cast<double>(t) / t_max);
}

const std::vector<AkbModel>& builtin_models() {
  static const std::vector<AkbModel> models = {
      {"Flying Stork", {-0.86, 0.24, -1.10, 0.75, 0.72}, {-0.81, -0.35, -0.26, 0.64, 0.60}},
      {"Messy Tie", {-0.62, 0.18, 0.65, 0.32, 0.77}, {0.36, 0.73, -0.62, 0.40, 1.09}},
      {"Rightward Peaks", {-1.79, -0.33, 2.00, -0.67, 1.30}, {-0.91, -0.88, -0.84, 0.67, -0.36}},
      {"Origami Snake", {-1.36, 2.00, 1.00, -0.60, 1.22}, {0.30, 1.03, -0.21, 0.40, 0.06}},
  };
  return models;
}

const AkbModel& builtin_model(std::string_view name) {
  for (const AkbModel& model : builtin_models())
    if (iequals(model.name, name)) return model;
  throw NotFound("unknown anakatabatic model: " + std::string(name));
}

std::vector<double> per_particle_weights(const InertiaStrategy& strategy,
                                         const FitnessDeltas* deltas, int n, int t,
                                         int t_max, double fallback, RngStream& rng) {
  if (n < 1) throw ContractViolation("particle count must be positive");
  const auto count = static_cast<std::size_t>(n);

  auto adaptive = [&](auto&& weight_of) {
    if (t < 2) return std::vector<double>(count, fallback);
    if (deltas == nullptr) throw ContractViolation("adaptive inertia needs fitness deltas at t >= 2");
    if (deltas->delta.size() != count) throw ContractViolation("fitness deltas do not match swarm size");
    std::vector<double> w(count);
    for (std::size_t k = 0; k < count; ++k)
      w[k] = weight_of(compute_theta(deltas->delta[k], deltas->min_delta, rng));
    return w;
  };

  return std::visit(
      overloaded{
          [&](const ConstantInertia& s) { return std::vector<double>(count, s.w); },
          [&](const LdiwInertia& s) {
            return std::vector<double>(count, ldiw_weight(s.w_min, s.w_max, t, t_max));
          },
          [&](const LanguidInertia& s) {
            const LanguidStep step = languid_model(s.w0);
            return adaptive([&](const Theta& theta) { return step(theta); });
          },
          [&](const AnakatabaticInertia& s) {
            return adaptive(
                [&](const Theta& theta) { return akb_weight(s.model, theta.angle, t, t_max); });
          },
      },
      strategy);
}

}  // namespace akb
