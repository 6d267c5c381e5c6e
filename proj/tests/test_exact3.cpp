#include <doctest.h>

#include <cmath>
#include <random>

#include "fermat/errors.hpp"
#include "fermat/exact3.hpp"
#include "fermat/weiszfeld.hpp"
#include "support.hpp"

using namespace fermat;
using exact3::CaseKind;

namespace {

const double kH = std::sqrt(3.0) / 2;

Instance as_instance(const Point& a, const Point& b, const Point& c) { return Instance({a, b, c}); }

}  // namespace

TEST_CASE("classify examples") {
  CHECK(exact3::classify(make_point({0, 0}), make_point({1, 0}), make_point({0.5, kH})).kind ==
        CaseKind::interior);

  const auto v = exact3::classify(make_point({0, 0}), make_point({1, 0}), make_point({-0.866025, 0.5}));
  CHECK(v.kind == CaseKind::vertex);
  CHECK(v.vertex_index == std::optional<std::size_t>(0));

  CHECK(exact3::classify(make_point({0, 0}), make_point({1, 0}), make_point({3, 0})).kind ==
        CaseKind::collinear);
}

TEST_CASE("an angle of exactly 120 degrees routes to the vertex case") {
  const auto c = exact3::classify(make_point({0, 0}), make_point({1, 0}),
                                  make_point({-0.5, kH}));
  CHECK(c.kind == CaseKind::vertex);
  CHECK(c.vertex_index == std::optional<std::size_t>(0));
}

TEST_CASE("torricelli_point examples") {
  const Point eq = exact3::torricelli_point(make_point({0, 0}), make_point({1, 0}), make_point({0.5, kH}));
  CHECK((eq - make_point({0.5, std::sqrt(3.0) / 6})).norm() <= 1e-15);

  const Point a = make_point({0, 0}), b = make_point({4, 0}), c = make_point({0, 3});
  const Point s = exact3::torricelli_point(a, b, c);
  const Instance inst = as_instance(a, b, c);
  const auto chk = subdiff::three_point_conditions(inst, s);
  CHECK(chk.satisfied);
  CHECK(std::abs(objective(inst, s) - weiszfeld::solve(inst).solution.value) <= 1e-8);
  CHECK(objective(inst, s) == doctest::Approx(6.7664325675223065).epsilon(1e-12));

  // (1, 0.1) would give a 168-degree apex; (1, 0.8) keeps every angle below 120.
  const Point p = make_point({0, 0}), q = make_point({2, 0}), r = make_point({1, 0.8});
  REQUIRE(exact3::classify(p, q, r).kind == CaseKind::interior);
  const Instance iso = as_instance(p, q, r);
  CHECK(std::abs(objective(iso, exact3::torricelli_point(p, q, r)) -
                 weiszfeld::solve(iso).solution.value) <= 1e-8);

  CHECK_THROWS_AS(exact3::torricelli_point(make_point({0, 0}), make_point({1, 0}), make_point({3, 0})),
                  InvalidArgument);
}

TEST_CASE("solve_exact3 examples") {
  const auto v = exact3::solve_exact3(make_point({0, 0}), make_point({1, 0}), make_point({-0.866025, 0.5}));
  CHECK(v.kind == CaseKind::vertex);
  CHECK(v.point == make_point({0, 0}));

  const auto c = exact3::solve_exact3(make_point({0, 0}), make_point({1, 0}), make_point({3, 0}));
  CHECK(c.kind == CaseKind::collinear);
  CHECK(c.point == make_point({1, 0}));
  const auto c2 = exact3::solve_exact3(make_point({3, 0}), make_point({0, 0}), make_point({1, 0}));
  CHECK(c2.point == make_point({1, 0}));
  CHECK(c2.vertex_index == std::optional<std::size_t>(2));

  const auto i = exact3::solve_exact3(make_point({0, 0}), make_point({1, 0}), make_point({0.5, kH}));
  CHECK(i.kind == CaseKind::interior);
  CHECK((i.point - make_point({0.5, std::sqrt(3.0) / 6})).norm() <= 1e-15);

  CHECK_THROWS_AS(exact3::solve_exact3(make_point({0, 0, 0}), make_point({1, 0, 0}), make_point({0, 1, 0})),
                  InvalidArgument);
}

TEST_CASE("property: exact3 agrees with weiszfeld and satisfies its optimality conditions") {
  std::mt19937_64 rng(300);
  int interior = 0, vertex = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const Point a = fermat::testing::uniform_point(rng, 2);
    const Point b = fermat::testing::uniform_point(rng, 2);
    const Point c = fermat::testing::uniform_point(rng, 2);
    const Instance inst = as_instance(a, b, c);
    const auto tc = exact3::solve_exact3(a, b, c);
    const double w = weiszfeld::solve(inst).solution.value;
    CHECK(std::abs(objective(inst, tc.point) - w) <= 1e-7);
    if (tc.kind == CaseKind::interior) {
      ++interior;
      const auto chk = subdiff::three_point_conditions(inst, tc.point);
      const auto& v = chk.directions.v;
      CHECK((v[0] + v[1] + v[2]).norm() <= 1e-8);
    } else if (tc.kind == CaseKind::vertex) {
      ++vertex;
      CHECK(subdiff::certify(inst, tc.point).residual <= 1e-9);
    }
  }
  CHECK(interior > 0);
  CHECK(vertex > 0);
}

TEST_CASE("property: permutation invariance and rigid-motion equivariance") {
  std::mt19937_64 rng(301);
  std::uniform_real_distribution<double> angle(0.0, 6.283185307179586);
  std::uniform_real_distribution<double> shift(-5.0, 5.0);
  for (int trial = 0; trial < 200; ++trial) {
    const Point a = fermat::testing::uniform_point(rng, 2);
    const Point b = fermat::testing::uniform_point(rng, 2);
    const Point c = fermat::testing::uniform_point(rng, 2);
    const Point p = exact3::solve_exact3(a, b, c).point;
    CHECK((exact3::solve_exact3(b, c, a).point - p).norm() <= 1e-12);
    CHECK((exact3::solve_exact3(c, b, a).point - p).norm() <= 1e-12);
    CHECK((exact3::solve_exact3(b, a, c).point - p).norm() <= 1e-12);

    const fermat::testing::RigidMotion2 motion{angle(rng), make_point({shift(rng), shift(rng)})};
    CHECK((exact3::solve_exact3(motion(a), motion(b), motion(c)).point - motion(p)).norm() <= 1e-9);
  }
}
