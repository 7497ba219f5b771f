#include "akb/rng.hpp"
#include "akb/swarm.hpp"
#include "test_helpers.hpp"

#include <doctest.h>

#include <cmath>
#include <limits>
#include <set>

using namespace akb;

TEST_CASE("rng streams are reproducible and keyed") {
  RngStream a(7), b(7), c(8);
  for (int i = 0; i < 100; ++i) {
    const double x = a.uniform();
    CHECK(x == b.uniform());
    CHECK(x >= 0.0);
    CHECK(x < 1.0);
  }
  CHECK(a.uniform() != c.uniform());

  std::set<std::uint64_t> seeds;
  for (std::uint64_t p = 0; p < 50; ++p)
    for (std::uint64_t r = 0; r < 50; ++r) seeds.insert(derive_seed(1, {p, r}));
  CHECK(seeds.size() == 2500);
  CHECK(derive_seed(1, {2, 3}) == derive_seed(1, {2, 3}));
  CHECK(derive_seed(1, {2, 3}) != derive_seed(1, {3, 2}));
  CHECK(derive_seed(1, {0}) != derive_seed(2, {0}));
}

TEST_CASE("search space rejects degenerate bounds") {
  CHECK_THROWS_AS(SearchSpace::cube(0, -1, 1), ConfigError);
  CHECK_THROWS_AS(SearchSpace::cube(2, 1, 1), ConfigError);
  CHECK_THROWS_AS(SearchSpace(Vector::Zero(2), Vector::Ones(3)), ConfigError);
}

TEST_CASE("clip_position clamps per component") {
  const SearchSpace box = SearchSpace::cube(2, -1, 1);
  CHECK(clip_position(Vector{{2.0, 0.5}}, box) == Vector{{1.0, 0.5}});
  CHECK(clip_position(Vector{{0.25, -0.75}}, box) == Vector{{0.25, -0.75}});
  CHECK(clip_position(Vector{{-5.0, -5.0}}, SearchSpace::cube(2, 0, 1)) == Vector{{0.0, 0.0}});
}

TEST_CASE("initialize_swarm evaluates every particle once") {
  const ObjectiveProblem problem = test::sphere_problem(2);
  RngStream rng(3);
  const SwarmState s = initialize_swarm(problem, 6, rng);
  REQUIRE(s.particles.size() == 6);
  CHECK(s.evals == 6);
  CHECK(s.t == 0);
  double best = std::numeric_limits<double>::infinity();
  for (const Particle& p : s.particles) {
    CHECK(problem.space.contains(p.x));
    CHECK((p.v.array().abs() <= 2.0).all());
    CHECK(p.f_curr == problem.evaluate(p.x));
    CHECK(p.p == p.x);
    CHECK(p.f_p == p.f_curr);
    CHECK_FALSE(p.f_prev.has_value());
    best = std::min(best, p.f_curr);
  }
  CHECK(s.f_g == best);
  CHECK(s.f_g >= 0.0);
}

TEST_CASE("initialize_swarm is deterministic") {
  const ObjectiveProblem problem = test::sphere_problem(3);
  RngStream a(11), b(11);
  const SwarmState s1 = initialize_swarm(problem, 5, a);
  const SwarmState s2 = initialize_swarm(problem, 5, b);
  for (std::size_t k = 0; k < 5; ++k) {
    CHECK(s1.particles[k].x == s2.particles[k].x);
    CHECK(s1.particles[k].v == s2.particles[k].v);
  }
  CHECK(s1.g == s2.g);
}

TEST_CASE("initialize_swarm preconditions and failures") {
  const ObjectiveProblem problem = test::sphere_problem(2);
  RngStream rng(1);
  CHECK_THROWS_AS(initialize_swarm(problem, 1, rng), ContractViolation);

  ObjectiveProblem broken = problem;
  broken.evaluate = [](const Vector& x) { return x[0] > 0 ? std::nan("") : 1.0; };
  RngStream rng2(1);
  bool thrown = false;
  try {
    for (int i = 0; i < 20; ++i) initialize_swarm(broken, 8, rng2);
  } catch (const NonFiniteFitness& e) {
    thrown = true;
    CHECK(std::string(e.what()).find("particle") != std::string::npos);
  }
  CHECK(thrown);
}

TEST_CASE("warm start places the first particles") {
  const ObjectiveProblem problem = test::sphere_problem(2);
  RngStream rng(5);
  const std::vector<Vector> warm = {Vector{{0.0, 0.0}}, Vector{{3.0, 0.5}}};
  const SwarmState s = initialize_swarm(problem, 4, rng, warm);
  CHECK(s.particles[0].x == Vector{{0.0, 0.0}});
  CHECK(s.particles[1].x == Vector{{1.0, 0.5}});
  CHECK(s.f_g == 0.0);
  CHECK(s.g == Vector{{0.0, 0.0}});
}

TEST_CASE("update_bests") {
  const ObjectiveProblem problem = test::sphere_problem(1);
  RngStream rng(2);
  SwarmState s = initialize_swarm(problem, 3, rng);

  SUBCASE("no improvement leaves state unchanged") {
    const SwarmState before = s;
    for (Particle& p : s.particles) p.f_curr = p.f_p + 1.0;
    update_bests(s);
    for (std::size_t k = 0; k < 3; ++k) {
      CHECK(s.particles[k].p == before.particles[k].p);
      CHECK(s.particles[k].f_p == before.particles[k].f_p);
    }
    CHECK(s.f_g == before.f_g);
    CHECK(s.g == before.g);
  }

  SUBCASE("one particle improves") {
    const SwarmState before = s;
    s.particles[1].x = Vector::Constant(1, 0.0);
    s.particles[1].f_curr = -1.0;
    update_bests(s);
    CHECK(s.particles[1].f_p == -1.0);
    CHECK(s.particles[0].p == before.particles[0].p);
    CHECK(s.particles[2].p == before.particles[2].p);
    CHECK(s.f_g == -1.0);
  }

  SUBCASE("ties go to the lowest index") {
    s.particles[2].x = Vector::Constant(1, 0.2);
    s.particles[2].f_curr = -5.0;
    s.particles[1].x = Vector::Constant(1, 0.1);
    s.particles[1].f_curr = -5.0;
    update_bests(s);
    CHECK(s.g == Vector::Constant(1, 0.1));
  }
}

TEST_CASE("run budget arithmetic") {
  CHECK(RunBudget{600}.max_iterations(6) == 99);
  CHECK(RunBudget{12}.max_iterations(6) == 1);
  CHECK(RunBudget{13}.max_iterations(6) == 1);
}
