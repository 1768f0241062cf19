#include <cmath>
#include <limits>

#include "doctest.h"

#include "bjgeo/rng.hpp"
#include "bjgeo/space.hpp"

using namespace bjgeo;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();

bool contains_vector(const std::vector<Vector>& vs, const Vector& v, double tol = 1e-9) {
  for (const auto& u : vs) {
    if (u.size() == v.size() && max_abs_diff(u, v) <= tol) return true;
  }
  return false;
}
}  // namespace

TEST_SUITE("spaces") {

TEST_CASE("norm values across the families") {
  CHECK(Space::lp(kInf, 2).norm({1.0, -2.0}) == doctest::Approx(2.0));
  CHECK(Space::lp(2.0, 2).norm({3.0, 4.0}) == doctest::Approx(5.0));
  CHECK(Space::lp(1.0, 3).norm({1.0, -1.0, 2.0}) == doctest::Approx(4.0));
}

TEST_CASE("dual norm is the conjugate-exponent norm") {
  CHECK(Space::lp(kInf, 2).dual_norm({1.0, 1.0}) == doctest::Approx(2.0));
  CHECK(Space::lp(2.0, 2).dual_norm({0.6, 0.8}) == doctest::Approx(1.0));
  CHECK(Space::lp(1.0, 2).dual_norm({0.5, -0.25}) == doctest::Approx(0.5));
}

TEST_CASE("dimension mismatches are rejected") {
  CHECK_THROWS_AS(Space::lp(2.0, 2).norm({1.0, 2.0, 3.0}), DimensionMismatch);
  CHECK_THROWS_AS(Space::lp(2.0, 3).dual_norm({1.0}), DimensionMismatch);
}

TEST_CASE("supporting functionals on l2 are the normalized anchor") {
  const Space S = Space::lp(2.0, 2);
  const SupportSet s = S.support_functionals({3.0, 4.0});
  REQUIRE(s.extremes.size() == 1);
  CHECK(max_abs_diff(s.extremes[0], {0.6, 0.8}) <= 1e-12);
}

TEST_CASE("supporting functionals at a corner of the linf square") {
  const Space S = Space::lp(kInf, 2);
  const SupportSet s = S.support_functionals({1.0, 1.0});
  REQUIRE(s.extremes.size() == 2);
  CHECK(contains_vector(s.extremes, {1.0, 0.0}));
  CHECK(contains_vector(s.extremes, {0.0, 1.0}));
  // certificate: each listed functional attains and has unit dual norm,
  // and no other sign pattern does
  for (const auto& f : s.extremes) {
    CHECK(std::abs(dot(f, {1.0, 1.0}) - 1.0) <= 1e-12);
    CHECK(std::abs(S.dual_norm(f) - 1.0) <= 1e-12);
  }
  for (double a : {-1.0, 1.0}) {
    for (double b : {-1.0, 1.0}) {
      const Vector cand{a, b};  // dual norm 2: not an extreme of J
      CHECK(S.dual_norm(cand) > 1.0 + 1e-9);
    }
  }
}

TEST_CASE("supporting functionals at a smooth edge point of linf") {
  const SupportSet s = Space::lp(kInf, 2).support_functionals({1.0, 0.5});
  REQUIRE(s.extremes.size() == 1);
  CHECK(max_abs_diff(s.extremes[0], {1.0, 0.0}) <= 1e-12);
}

TEST_CASE("l1 support set enumerates sign choices on zero coordinates") {
  const Space S = Space::lp(1.0, 3);
  const SupportSet s = S.support_functionals({1.0, 0.0, 0.0});
  REQUIRE(s.extremes.size() == 4);
  for (double a : {-1.0, 1.0}) {
    for (double b : {-1.0, 1.0}) CHECK(contains_vector(s.extremes, {1.0, a, b}));
  }
}

TEST_CASE("smooth points") {
  CHECK(Space::lp(kInf, 2).is_smooth_point({1.0, 0.5}).holds());
  CHECK(Space::lp(kInf, 2).is_smooth_point({1.0, 1.0}).fails());
  CHECK(Space::lp(2.0, 2).is_smooth_point({3.0, 4.0}).holds());
  CHECK_THROWS_AS(Space::lp(2.0, 2).is_smooth_point({0.0, 0.0}), ZeroVectorError);
}

TEST_CASE("extreme points of polyhedral balls") {
  const auto linf2 = Space::lp(kInf, 2).extreme_points_ball();
  REQUIRE(linf2.size() == 4);
  CHECK(contains_vector(linf2, {1.0, 1.0}));
  CHECK(contains_vector(linf2, {-1.0, 1.0}));

  const auto l1_2 = Space::lp(1.0, 2).extreme_points_ball();
  REQUIRE(l1_2.size() == 4);
  CHECK(contains_vector(l1_2, {1.0, 0.0}));
  CHECK(contains_vector(l1_2, {0.0, -1.0}));

  CHECK_THROWS_AS(Space::lp(2.0, 2).extreme_points_ball(), NotPolyhedralError);
}

TEST_CASE("polyhedral facet descriptions reproduce l1 and linf") {
  const Space as_linf = Space::polyhedral(2, {{1.0, 0.0}, {0.0, 1.0}});
  const Space as_l1 = Space::polyhedral(2, {{1.0, 1.0}, {1.0, -1.0}});
  const Space linf = Space::lp(kInf, 2);
  const Space l1 = Space::lp(1.0, 2);
  Rng rng(99);
  for (int i = 0; i < 1000; ++i) {
    const Vector v{rng.normal(), rng.normal()};
    CHECK(as_linf.norm(v) == doctest::Approx(linf.norm(v)).epsilon(1e-12));
    CHECK(as_l1.norm(v) == doctest::Approx(l1.norm(v)).epsilon(1e-12));
  }
  // vertex enumeration agrees with the closed forms
  CHECK(as_linf.extreme_points_ball().size() == 4);
  CHECK(as_l1.extreme_points_ball().size() == 4);
  CHECK(contains_vector(as_l1.extreme_points_ball(), {1.0, 0.0}));
}

TEST_CASE("facets must span the dual space") {
  CHECK_THROWS_AS(Space::polyhedral(2, {{1.0, 0.0}}), std::invalid_argument);
}

TEST_CASE("sphere sampling is unit, covering, and seed deterministic") {
  const Space l2 = Space::lp(2.0, 2);
  const auto one = l2.sample_sphere(1, 7);
  REQUIRE(one.size() == 1);
  CHECK(std::abs(l2.norm(one[0]) - 1.0) <= 1e-12);

  const Space linf3 = Space::lp(kInf, 3);
  const auto many = linf3.sample_sphere(100, 1);
  REQUIRE(many.size() == 100);
  for (const auto& v : many) CHECK(std::abs(max_abs(v) - 1.0) <= 1e-12);

  CHECK(linf3.sample_sphere(100, 1) == many);
  CHECK(linf3.sample_sphere(100, 2) != many);
}

TEST_CASE("norm axioms hold on random vectors") {
  std::vector<Space> pool = {Space::lp(1.0, 3), Space::lp(2.0, 3), Space::lp(3.5, 2),
                             Space::lp(kInf, 4),
                             Space::polyhedral(2, {{1.0, 0.2}, {-0.3, 1.0}, {0.8, -0.9}}),
                             Space::product(Space::lp(2.0, 2), Space::lp(kInf, 2))};
  Rng rng(5);
  for (const Space& S : pool) {
    for (int i = 0; i < 200; ++i) {
      Vector x(std::size_t(S.dim())), y(std::size_t(S.dim()));
      for (double& c : x) c = rng.normal();
      for (double& c : y) c = rng.normal();
      const double a = rng.uniform(-3.0, 3.0);
      CHECK(S.norm(scaled(x, a)) ==
            doctest::Approx(std::abs(a) * S.norm(x)).epsilon(1e-12));
      CHECK(S.norm(add_scaled(x, 1.0, y)) <= S.norm(x) + S.norm(y) + 1e-12);
    }
  }
}

TEST_CASE("support functionals attain and have unit dual norm") {
  std::vector<Space> pool = {Space::lp(1.0, 3), Space::lp(2.0, 2), Space::lp(4.0, 3),
                             Space::lp(kInf, 3),
                             Space::polyhedral(2, {{1.0, 0.2}, {-0.3, 1.0}, {0.8, -0.9}}),
                             Space::product(Space::lp(2.0, 2), Space::lp(kInf, 2))};
  Rng rng(11);
  for (const Space& S : pool) {
    for (int i = 0; i < 100; ++i) {
      Vector x(std::size_t(S.dim()));
      for (double& c : x) c = rng.normal();
      const double nx = S.norm(x);
      if (nx < 1e-6) continue;
      for (const auto& f : S.support_functionals(x).extremes) {
        CHECK(std::abs(S.dual_norm(f) - 1.0) <= 1e-9);
        CHECK(std::abs(dot(f, x) - nx) <= 1e-9 * nx);
      }
    }
  }
}

TEST_CASE("l2 self-consistency of the duality map") {
  const Space S = Space::lp(2.0, 3);
  Rng rng(13);
  for (int i = 0; i < 200; ++i) {
    Vector x{rng.normal(), rng.normal(), rng.normal()};
    const double nx = S.norm(x);
    if (nx < 1e-6) continue;
    const auto s = S.support_functionals(x);
    REQUIRE(s.extremes.size() == 1);
    CHECK(max_abs_diff(s.extremes[0], scaled(x, 1.0 / nx)) <= 1e-12);
  }
}

TEST_CASE("product spaces compose under the max norm") {
  const Space P = Space::product(Space::lp(2.0, 2), Space::lp(2.0, 2));
  CHECK(P.dim() == 4);
  CHECK(P.norm({3.0, 4.0, 0.0, 1.0}) == doctest::Approx(5.0));
  CHECK(P.dual_norm({0.6, 0.8, 0.0, 1.0}) == doctest::Approx(2.0));  // sum of factor duals
  CHECK_FALSE(P.smooth_kind());
  CHECK_FALSE(P.polyhedral_kind());
  CHECK(Space::product(Space::lp(1.0, 2), Space::lp(kInf, 2)).polyhedral_kind());
}

TEST_CASE("dimension-one spaces behave as the absolute value") {
  const Space R1 = Space::lp(2.0, 1);
  CHECK(R1.norm({-3.0}) == doctest::Approx(3.0));
  CHECK(R1.is_smooth_point({2.0}).holds());
  CHECK(R1.smooth_kind());
}

}  // TEST_SUITE
