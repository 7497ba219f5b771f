#pragma once

#include "akb/rng.hpp"

#include <array>
#include <numbers>
#include <span>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace akb {

inline constexpr double kThetaMin = std::numbers::pi / 4.0;
inline constexpr double kThetaMax = 5.0 * std::numbers::pi / 4.0;

/// Knot abscissae pi/4, pi/2, 3pi/4, pi, 5pi/4.
inline constexpr std::array<double, 5> kKnotAngles = {
    std::numbers::pi / 4.0, std::numbers::pi / 2.0, 3.0 * std::numbers::pi / 4.0,
    std::numbers::pi, 5.0 * std::numbers::pi / 4.0};

using Knots = std::array<double, 5>;

/// An anakatabatic model: start and final inertia curves over theta, each a
/// piecewise-linear interpolant through five knots.
struct AkbModel {
  std::string name;
  Knots knots_start{};
  Knots knots_final{};

  bool operator==(const AkbModel&) const = default;
};

struct ConstantInertia {
  double w = 0.72;
};

/// Linearly decreasing from w_max at t = 0 to w_min at t = t_max.
struct LdiwInertia {
  double w_min = 0.4;
  double w_max = 0.9;
};

/// Languid particle dynamics: w0 + 0.05 after a strict fitness improvement, 0 otherwise.
struct LanguidInertia {
  double w0 = 0.72;
};

struct AnakatabaticInertia {
  AkbModel model;
};

using InertiaStrategy =
    std::variant<ConstantInertia, LdiwInertia, LanguidInertia, AnakatabaticInertia>;

/// Short human-readable label, e.g. "constant(0.72)" or the model name.
std::string describe(const InertiaStrategy& strategy);

void validate(const InertiaStrategy& strategy);

/// Per-particle fitness changes f(x_k at t-1) - f(x_k at t-2).
struct FitnessDeltas {
  std::vector<double> delta;
  double min_delta = 0.0;

  static FitnessDeltas from(std::vector<double> delta);
};

struct Theta {
  double angle = kThetaMin;
  /// The atan2 result was (numerically) zero and got replaced by a uniform draw.
  bool randomized = false;
};

/// theta = atan2(delta_k, min_delta) mapped into [0, 2pi), then kept inside
/// the quadrant the signs imply and clamped to [pi/4, 5pi/4]. A result below
/// 1e-300 (only possible when both inputs are zero) is replaced by a uniform
/// draw on [pi/4, 5pi/4].
Theta compute_theta(double delta_k, double min_delta, RngStream& rng);

enum class Advancement { AllFailed, SwarmImprovedParticleNot, ParticleImproved };

/// [pi/4, pi/2] -> AllFailed, (pi/2, pi] -> SwarmImprovedParticleNot,
/// (pi, 5pi/4] -> ParticleImproved.
Advancement classify_advancement(double theta);

double interpolate_knots(const Knots& knots, double theta);

/// Blend W_s(theta) + (W_f(theta) - W_s(theta)) * t / t_max. With t_max == 0 only W_s is used.
double akb_weight(const AkbModel& model, double theta, int t, int t_max);

/// Languid step model over theta. Not expressible by knots: it jumps at pi.
struct LanguidStep {
  double w0 = 0.72;

  double operator()(double theta) const;
  /// A randomized theta carries no improvement (delta == 0) and maps to 0.
  double operator()(const Theta& theta) const;
};

LanguidStep languid_model(double w0);

double ldiw_weight(double w_min, double w_max, int t, int t_max);

/// The four published models: Flying Stork, Messy Tie (Standard PSO),
/// Rightward Peaks, Origami Snake (TVAC-PSO).
const std::vector<AkbModel>& builtin_models();

/// Throws NotFound for unknown names.
const AkbModel& builtin_model(std::string_view name);

/// Inertia weight for every particle at iteration t.
///
/// Constant and LDIW are global. Languid and anakatabatic strategies need
/// `deltas` from t >= 2 on; before that every particle gets `fallback`
/// (w0 for Standard PSO, the LDIW value at t for TVAC-PSO).
std::vector<double> per_particle_weights(const InertiaStrategy& strategy,
                                         const FitnessDeltas* deltas, int n, int t,
                                         int t_max, double fallback, RngStream& rng);

}  // namespace akb
