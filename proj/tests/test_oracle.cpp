#include <doctest.h>

#include <cmath>
#include <random>

#include "fermat/errors.hpp"
#include "fermat/oracle.hpp"
#include "fermat/weiszfeld.hpp"
#include "support.hpp"

using namespace fermat;

TEST_CASE("grid_minimize examples") {
  const auto single = oracle::grid_minimize(Instance({make_point({0.3, -2})}));
  CHECK(single.best_point == make_point({0.3, -2}));
  CHECK(single.best_value == 0.0);

  const Instance sq({make_point({0, 0}), make_point({1, 0}), make_point({0, 1}), make_point({1, 1})});
  const auto g = oracle::grid_minimize(sq, 6, 32);
  CHECK((g.best_point - make_point({0.5, 0.5})).norm() <= g.resolution);
  CHECK(std::abs(g.best_value - 2 * std::sqrt(2.0)) <= 1e-4);
  CHECK(g.level_values.size() == 6);

  std::mt19937_64 rng(8);
  const Instance tri = fermat::testing::random_instance(rng, 3);
  const auto gt = oracle::grid_minimize(tri);
  const double w = weiszfeld::solve(tri).solution.value;
  CHECK(std::abs(gt.best_value - w) <= tri.total_weight() * gt.resolution * std::sqrt(2.0));
}

TEST_CASE("grid_minimize guards its inputs") {
  std::mt19937_64 rng(1);
  CHECK_THROWS_AS(oracle::grid_minimize(fermat::testing::random_instance(rng, 5, 4)), UnsupportedError);
  const Instance inst({make_point({0, 0}), make_point({1, 1})});
  CHECK_THROWS_AS(oracle::grid_minimize(inst, 0), InvalidArgument);
  CHECK_THROWS_AS(oracle::grid_minimize(inst, 2, 0), InvalidArgument);
}

TEST_CASE("grid_minimize handles flat boxes and 1-D and 3-D instances") {
  const Instance flat({make_point({0, 1}), make_point({1, 1}), make_point({5, 1})});
  const auto g = oracle::grid_minimize(flat);
  CHECK(g.best_value == doctest::Approx(5.0).epsilon(1e-6));

  std::mt19937_64 rng(12);
  const Instance cube = fermat::testing::random_instance(rng, 6, 3);
  const auto g3 = oracle::grid_minimize(cube, 4, 16);
  const double w = weiszfeld::solve(cube).solution.value;
  CHECK(g3.best_value >= w - 1e-12);
  CHECK(g3.best_value - w <= oracle::coverage_bound(cube, g3));
}

TEST_CASE("fd_gradient examples") {
  const Point g = oracle::fd_gradient(Instance({make_point({0, 0})}), make_point({3, 4}), 1e-6);
  CHECK(std::abs(g(0) - 0.6) <= 1e-6);
  CHECK(std::abs(g(1) - 0.8) <= 1e-6);

  const Instance sq({make_point({0, 0}), make_point({1, 0}), make_point({0, 1}), make_point({1, 1})});
  CHECK(oracle::fd_gradient(sq, make_point({0.5, 0.5})).norm() <= 1e-6);

  CHECK_THROWS_AS(oracle::fd_gradient(sq, make_point({5e-6, 0}), 1e-6), AtVertexError);
  CHECK_THROWS_AS(oracle::fd_gradient(sq, make_point({0.5, 0.5, 0.5})), InvalidArgument);
}

TEST_CASE("property: grid oracle brackets the solver and refines monotonically") {
  std::mt19937_64 rng(55);
  for (int trial = 0; trial < 60; ++trial) {
    const Instance inst = fermat::testing::random_weighted_instance(rng, 3 + trial % 6);
    const auto grid = oracle::grid_minimize(inst);
    const double w = weiszfeld::solve(inst).solution.value;
    CHECK(std::abs(grid.best_value - w) <= oracle::coverage_bound(inst, grid));
    CHECK(grid.best_value >= w - 1e-12);
    for (std::size_t l = 1; l < grid.level_values.size(); ++l)
      CHECK(grid.level_values[l] <= grid.level_values[l - 1]);
  }
}
