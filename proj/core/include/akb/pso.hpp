#pragma once

#include "akb/inertia.hpp"
#include "akb/rng.hpp"
#include "akb/swarm.hpp"
#include "akb/types.hpp"

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace akb {

enum class Variant { Standard, Tvac };

std::string to_string(Variant variant);
/// "standard" or "tvac"; throws ConfigError otherwise.
Variant parse_variant(std::string_view text);

struct PsoConfig {
  Variant variant = Variant::Standard;
  int particles = 30;

  // Standard PSO
  double c1 = 1.0;
  double c2 = 1.0;

  // TVAC-PSO
  double c1_start = 2.5;
  double c1_final = 0.5;
  double c2_start = 0.5;
  double c2_final = 2.5;
  /// Schedule used by TVAC-PSO before adaptive inertia has deltas (t < 2).
  LdiwInertia tvac_ldiw{};

  InertiaStrategy inertia = ConstantInertia{0.72};
  /// Default inertia; Standard PSO falls back to it while t < 2.
  double w0 = 0.72;

  RunBudget budget{30'000};
  std::uint64_t seed = 0;

  /// Optional initial positions for the first particles.
  std::vector<Vector> warm_start;

  /// n = 3D, 10^3 D evaluations, c1 = c2 = 1, constant 0.72 inertia.
  static PsoConfig standard(int dims);
  /// n = 3D, 10^3 D evaluations, c1 2.5 -> 0.5, c2 0.5 -> 2.5, LDIW 0.9 -> 0.4.
  static PsoConfig tvac(int dims);

  /// Throws ConfigError when the configuration cannot run on `space`.
  void validate(const SearchSpace& space) const;

  /// Weight used before adaptive strategies have fitness deltas.
  double fallback_weight(int t, int t_max) const;
};

struct Coefficients {
  double c1;
  double c2;
};

/// Cognitive and social coefficients at iteration t. Standard PSO returns the
/// constants; TVAC blends linearly between start and final values.
Coefficients tvac_coefficients(const PsoConfig& cfg, int t, int t_max);

/// v = w v + c1 r1 o (p - x) + c2 r2 o (g - x) with explicit random vectors.
Vector velocity_update(const Particle& particle, const Vector& g, double w, double c1,
                       double c2, const Vector& r1, const Vector& r2);

/// Draws r1 then r2 (each a full D-vector) from `rng`.
Vector velocity_update(const Particle& particle, const Vector& g, double w, double c1,
                       double c2, RngStream& rng);

Vector position_update(const Vector& x, const Vector& v, const SearchSpace& space);

/// Stepwise gbest PSO. Construction initializes and evaluates the swarm;
/// every `step` performs one synchronous iteration (all particles move
/// against the previous iteration's g, then bests are refreshed).
class PsoEngine {
 public:
  PsoEngine(const ObjectiveProblem& problem, PsoConfig cfg);

  const SwarmState& state() const { return state_; }
  const PsoConfig& config() const { return cfg_; }
  int t_max() const { return t_max_; }
  bool done() const { return state_.t >= t_max_; }

  /// Fitness deltas for the next iteration, or nullopt while they are undefined.
  std::optional<FitnessDeltas> next_deltas() const;

  /// Inertia weights the configured strategy assigns for the next iteration.
  /// Consumes theta draws, so call it at most once per iteration.
  std::vector<double> next_weights();

  void step();
  /// One iteration with externally supplied per-particle weights.
  void step(std::span<const double> weights);

  RunRecord record() const;

 private:
  const ObjectiveProblem* problem_;
  PsoConfig cfg_;
  int t_max_;
  RngStream motion_rng_;
  RngStream theta_rng_;
  SwarmState state_;
  std::vector<double> trace_;
};

/// Initialization followed by iterations until the evaluation budget is spent.
RunRecord run(const ObjectiveProblem& problem, const PsoConfig& cfg);

}  // namespace akb
