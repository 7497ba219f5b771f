#include "akb/inertia.hpp"
#include "akb/model_io.hpp"
#include "akb/types.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace akb;

namespace {

constexpr double pi = std::numbers::pi;

// Mixed-scale generator: zeros, tiny, ordinary and huge magnitudes of both signs.
double wild(RngStream& rng) {
  const double u = rng.uniform();
  if (u < 0.05) return 0.0;
  const double magnitude = std::pow(10.0, rng.uniform(-300.0, 300.0));
  const double ordinary = rng.uniform(-10.0, 10.0);
  const double value = u < 0.5 ? ordinary : magnitude;
  return rng.uniform() < 0.5 ? -value : value;
}

}  // namespace

TEST_CASE("compute_theta on the named examples") {
  RngStream rng(1);
  CHECK(compute_theta(3.0, 3.0, rng).angle == doctest::Approx(pi / 4).epsilon(1e-15));
  CHECK(compute_theta(-2.0, -2.0, rng).angle == doctest::Approx(5 * pi / 4).epsilon(1e-15));
  // atan2(1, -1) evaluated directly.
  CHECK(compute_theta(1.0, -1.0, rng).angle == doctest::Approx(std::atan2(1.0, -1.0)).epsilon(1e-15));
  CHECK(compute_theta(1.0, -1.0, rng).angle == doctest::Approx(3 * pi / 4).epsilon(1e-15));

  const Theta zero = compute_theta(0.0, 0.0, rng);
  CHECK(zero.randomized);
  CHECK(zero.angle >= kThetaMin);
  CHECK(zero.angle <= kThetaMax);
  const Theta neg_zero = compute_theta(-0.0, -0.0, rng);
  CHECK(neg_zero.randomized);
}

TEST_CASE("compute_theta randomization is seeded") {
  RngStream a(9), b(9);
  for (int i = 0; i < 10; ++i) CHECK(compute_theta(0.0, 0.0, a).angle == compute_theta(0.0, 0.0, b).angle);
}

TEST_CASE("compute_theta rejects min_delta > delta") {
  RngStream rng(1);
  CHECK_THROWS_AS(compute_theta(-1.0, 0.0, rng), ContractViolation);
  CHECK_THROWS_AS(compute_theta(std::nan(""), 0.0, rng), ContractViolation);
}

TEST_CASE("extreme ratios stay in the sign-implied sector") {
  RngStream rng(1);
  // atan2 rounds these onto pi and pi/2 respectively.
  CHECK(classify_advancement(compute_theta(-1e-20, -1.0, rng).angle) == Advancement::ParticleImproved);
  CHECK(classify_advancement(compute_theta(1e300, -1.0, rng).angle) ==
        Advancement::SwarmImprovedParticleNot);
  CHECK(classify_advancement(compute_theta(0.0, -1.0, rng).angle) ==
        Advancement::SwarmImprovedParticleNot);
  CHECK(classify_advancement(compute_theta(1.0, 0.0, rng).angle) == Advancement::AllFailed);
}

TEST_CASE("theta range and quadrant soundness (property)") {
  RngStream rng(2024);
  RngStream theta_rng(7);
  int checked = 0;
  for (int i = 0; i < 100000; ++i) {
    double a = wild(rng), b = wild(rng);
    const double d = std::max(a, b), m = std::min(a, b);
    const Theta th = compute_theta(d, m, theta_rng);
    REQUIRE(th.angle >= kThetaMin);
    REQUIRE(th.angle <= kThetaMax);
    if (th.randomized) {
      CHECK(d == 0.0);
      continue;
    }
    const Advancement adv = classify_advancement(th.angle);
    REQUIRE((adv == Advancement::ParticleImproved) == (d < 0));
    REQUIRE((adv == Advancement::AllFailed) == (m >= 0));
    ++checked;
  }
  CHECK(checked > 90000);
}

TEST_CASE("classify_advancement follows the three sectors") {
  CHECK(classify_advancement(pi / 3) == Advancement::AllFailed);
  CHECK(classify_advancement(0.9 * pi) == Advancement::SwarmImprovedParticleNot);
  CHECK(classify_advancement(1.1 * pi) == Advancement::ParticleImproved);
  CHECK(classify_advancement(pi / 2) == Advancement::AllFailed);
  CHECK(classify_advancement(pi) == Advancement::SwarmImprovedParticleNot);
  CHECK_THROWS_AS(classify_advancement(0.1), ContractViolation);
  CHECK_THROWS_AS(classify_advancement(4.0), ContractViolation);
}

TEST_CASE("interpolate_knots") {
  const AkbModel& stork = builtin_model("Flying Stork");
  CHECK(interpolate_knots(stork.knots_start, pi / 4) == -0.86);
  CHECK(interpolate_knots(Knots{0, 0, 0, 0, 0}, 2.0) == 0.0);
  CHECK(interpolate_knots(stork.knots_start, 3 * pi / 8) == doctest::Approx(-0.31).epsilon(1e-12));
  CHECK_THROWS_AS(interpolate_knots(stork.knots_start, 0.5), ContractViolation);
}

TEST_CASE("knot exactness for every published model") {
  for (const AkbModel& m : builtin_models()) {
    for (std::size_t j = 0; j < 5; ++j) {
      CHECK(interpolate_knots(m.knots_start, kKnotAngles[j]) == m.knots_start[j]);
      CHECK(interpolate_knots(m.knots_final, kKnotAngles[j]) == m.knots_final[j]);
    }
  }
}

TEST_CASE("interpolation is linear inside a segment (property)") {
  RngStream rng(5);
  for (const AkbModel& m : builtin_models()) {
    for (int i = 0; i < 2000; ++i) {
      const std::size_t j = static_cast<std::size_t>(rng.uniform() * 4);
      const double lo = kKnotAngles[j], hi = kKnotAngles[j + 1];
      const double a = rng.uniform(lo, hi), b = rng.uniform(lo, hi), lambda = rng.uniform();
      const double mixed = interpolate_knots(m.knots_start, lambda * a + (1 - lambda) * b);
      const double expect =
          lambda * interpolate_knots(m.knots_start, a) + (1 - lambda) * interpolate_knots(m.knots_start, b);
      REQUIRE(std::abs(mixed - expect) <= 1e-12);
    }
  }
}

TEST_CASE("akb_weight blends start and final curves") {
  const AkbModel& snake = builtin_model("Origami Snake");
  CHECK(akb_weight(snake, pi / 2, 50, 100) == doctest::Approx(1.515).epsilon(1e-12));
  for (const AkbModel& m : builtin_models()) {
    for (int i = 0; i <= 100; ++i) {
      const double theta = kThetaMin + (kThetaMax - kThetaMin) * i / 100.0;
      CHECK(akb_weight(m, theta, 0, 37) == interpolate_knots(m.knots_start, theta));
      CHECK(akb_weight(m, theta, 37, 37) == interpolate_knots(m.knots_final, theta));
    }
  }
  CHECK(akb_weight(snake, pi / 2, 0, 0) == 2.00);
  CHECK_THROWS_AS(akb_weight(snake, pi / 2, 5, 4), ContractViolation);
}

TEST_CASE("languid step model") {
  const LanguidStep step = languid_model(0.72);
  CHECK(step(1.2 * pi) == doctest::Approx(0.77).epsilon(1e-15));
  CHECK(step(0.8 * pi) == 0.0);
  CHECK(step(pi) == 0.0);
  CHECK(step(Theta{1.2 * pi, true}) == 0.0);
}

TEST_CASE("ldiw schedule") {
  CHECK(ldiw_weight(0.4, 0.9, 0, 10) == 0.9);
  CHECK(ldiw_weight(0.4, 0.9, 10, 10) == 0.4);
  CHECK(ldiw_weight(0.4, 0.9, 5, 10) == doctest::Approx(0.65).epsilon(1e-12));
  CHECK_THROWS_AS(ldiw_weight(0.4, 0.9, 0, 0), ContractViolation);
}

TEST_CASE("builtin models") {
  CHECK(builtin_models().size() == 4);
  CHECK(builtin_model("Rightward Peaks").knots_start[2] == 2.00);
  CHECK(builtin_model("Messy Tie").knots_final[4] == 1.09);
  CHECK(builtin_model("origami snake").name == "Origami Snake");
  CHECK_THROWS_AS(builtin_model("Soaring Heron"), NotFound);
}

TEST_CASE("per_particle_weights") {
  RngStream rng(4);
  SUBCASE("constant is global") {
    const auto w = per_particle_weights(ConstantInertia{0.72}, nullptr, 4, 5, 10, 0.0, rng);
    CHECK(w == std::vector<double>(4, 0.72));
  }
  SUBCASE("ldiw is global") {
    const auto w = per_particle_weights(LdiwInertia{0.4, 0.9}, nullptr, 3, 10, 10, 0.0, rng);
    CHECK(w == std::vector<double>(3, 0.4));
  }
  SUBCASE("languid on a hand-built delta vector") {
    const FitnessDeltas d = FitnessDeltas::from({-1.0, 2.0, 0.5});
    CHECK(d.min_delta == -1.0);
    const auto w = per_particle_weights(LanguidInertia{0.72}, &d, 3, 4, 10, 0.72, rng);
    CHECK(w[0] == doctest::Approx(0.77).epsilon(1e-15));
    CHECK(w[1] == 0.0);
    CHECK(w[2] == 0.0);
  }
  SUBCASE("adaptive strategies fall back before t = 2") {
    const InertiaStrategy s = AnakatabaticInertia{builtin_model("Flying Stork")};
    CHECK(per_particle_weights(s, nullptr, 3, 0, 10, 0.72, rng) == std::vector<double>(3, 0.72));
    CHECK(per_particle_weights(s, nullptr, 3, 1, 10, 0.72, rng) == std::vector<double>(3, 0.72));
    CHECK_THROWS_AS(per_particle_weights(s, nullptr, 3, 2, 10, 0.72, rng), ContractViolation);
  }
  SUBCASE("anakatabatic maps theta through the model") {
    const FitnessDeltas d = FitnessDeltas::from({1.0, 1.0});
    const auto w = per_particle_weights(AnakatabaticInertia{builtin_model("Flying Stork")}, &d, 2,
                                        2, 10, 0.72, rng);
    // theta = pi/4 exactly on the diagonal
    CHECK(w[0] == doctest::Approx(0.8 * -0.86 + 0.2 * -0.81).epsilon(1e-12));
  }
}

TEST_CASE("strategy validation") {
  CHECK_THROWS_AS(validate(InertiaStrategy{LdiwInertia{0.9, 0.4}}), ConfigError);
  CHECK_NOTHROW(validate(InertiaStrategy{LdiwInertia{0.4, 0.9}}));
}

TEST_CASE("model JSON format") {
  const AkbModel& rp = builtin_model("Rightward Peaks");
  const nlohmann::json j = rp;
  CHECK(j.at("name") == "Rightward Peaks");
  CHECK(j.at("knots_start").size() == 5);
  CHECK(j.get<AkbModel>() == rp);

  CHECK_THROWS_AS(nlohmann::json({{"name", "x"}, {"knots_start", {1, 2}}}).get<AkbModel>(), ConfigError);

  const InertiaStrategy s = nlohmann::json{{"type", "anakatabatic"}, {"model", "Messy Tie"}}.get<InertiaStrategy>();
  CHECK(std::get<AnakatabaticInertia>(s).model == builtin_model("Messy Tie"));
  const nlohmann::json round = s;
  CHECK(round.get<InertiaStrategy>().index() == s.index());
  const nlohmann::json spline{{"type", "spline"}};
  CHECK_THROWS_AS(spline.get<InertiaStrategy>(), ConfigError);
}
