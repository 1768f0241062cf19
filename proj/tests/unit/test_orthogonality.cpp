#include <cmath>
#include <limits>

#include "doctest.h"

#include "bjgeo/orthogonality.hpp"
#include "bjgeo/rng.hpp"

using namespace bjgeo;

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// independent check of the one-sided derivatives by finite differences
double fd_plus(const Space& S, const Vector& x, const Vector& y, double h = 1e-6) {
  return (S.norm(add_scaled(x, h, y)) - S.norm(x)) / h;
}
double fd_minus(const Space& S, const Vector& x, const Vector& y, double h = 1e-6) {
  return (S.norm(x) - S.norm(add_scaled(x, -h, y))) / h;
}

}  // namespace

TEST_SUITE("orthogonality") {

TEST_CASE("one-sided derivatives on the examples") {
  {
    const Space S = Space::lp(2.0, 2);
    const auto d = one_sided_derivatives(S, {1.0, 0.0}, {0.0, 1.0});
    CHECK(d.d_plus == doctest::Approx(0.0).epsilon(0).scale(1));
    CHECK(d.d_minus == doctest::Approx(0.0).epsilon(0).scale(1));
  }
  {
    const Space S = Space::lp(kInf, 2);
    const Vector x{1.0, 1.0}, y{1.0, -1.0};
    const auto d = one_sided_derivatives(S, x, y);
    CHECK(std::abs(d.d_plus - fd_plus(S, x, y)) <= 1e-5);
    CHECK(std::abs(d.d_minus - fd_minus(S, x, y)) <= 1e-5);
    CHECK(d.d_plus == doctest::Approx(1.0));
    CHECK(d.d_minus == doctest::Approx(-1.0));
  }
  {
    const Space S = Space::lp(1.0, 2);
    const Vector x{1.0, 0.0}, y{0.0, 1.0};
    const auto d = one_sided_derivatives(S, x, y);
    CHECK(std::abs(d.d_plus - fd_plus(S, x, y)) <= 1e-5);
    CHECK(std::abs(d.d_minus - fd_minus(S, x, y)) <= 1e-5);
    CHECK(d.d_plus == doctest::Approx(1.0));
    CHECK(d.d_minus == doctest::Approx(-1.0));
  }
}

TEST_CASE("convexity keeps d_minus below d_plus") {
  Rng rng(3);
  const std::vector<Space> pool = {Space::lp(1.0, 3), Space::lp(2.0, 3), Space::lp(kInf, 3)};
  for (const Space& S : pool) {
    for (int i = 0; i < 300; ++i) {
      Vector x{rng.normal(), rng.normal(), rng.normal()};
      Vector y{rng.normal(), rng.normal(), rng.normal()};
      if (S.norm(x) < 1e-6) continue;
      const auto d = one_sided_derivatives(S, x, y);
      CHECK(d.d_minus <= d.d_plus + 1e-9);
    }
  }
}

TEST_CASE("positive part membership") {
  const Space l2 = Space::lp(2.0, 2);
  CHECK(in_positive_part(l2, {1.0, 0.0}, {1.0, 0.0}).holds());
  CHECK(in_positive_part(l2, {1.0, 0.0}, {-1.0, 0.0}).fails());

  // moving along (1,0) from an edge point of the linf ball never shrinks the norm
  const Space linf = Space::lp(kInf, 2);
  const Vector x{1.0, 0.5}, y{1.0, 0.0};
  CHECK(in_positive_part(linf, x, y).holds());
  double grid_min = 10.0;
  for (int k = 0; k <= 200; ++k) {
    grid_min = std::min(grid_min, linf.norm(add_scaled(x, 10.0 * k / 200.0, y)));
  }
  CHECK(grid_min >= 1.0 - 1e-12);
}

TEST_CASE("negative part membership") {
  const Space l2 = Space::lp(2.0, 2);
  CHECK(in_negative_part(l2, {1.0, 0.0}, {-1.0, 0.0}).holds());

  const Space linf = Space::lp(kInf, 2);
  CHECK(in_negative_part(linf, {1.0, 0.5}, {1.0, 0.0}).fails());
  CHECK(linf.norm(add_scaled({1.0, 0.5}, -0.1, {1.0, 0.0})) < 1.0);

  // the zero direction belongs to every part
  CHECK(in_negative_part(l2, {2.0, 1.0}, {0.0, 0.0}).holds());
  CHECK(in_positive_part(l2, {2.0, 1.0}, {0.0, 0.0}).holds());
}

TEST_CASE("birkhoff-james verdicts on the examples") {
  const Space l2 = Space::lp(2.0, 2);
  CHECK(is_bj_orthogonal(l2, {1.0, 0.0}, {0.0, 5.0}).holds());

  const Space linf = Space::lp(kInf, 2);
  CHECK(is_bj_orthogonal(linf, {1.0, 1.0}, {1.0, -1.0}).holds());
  CHECK(bj_oracle(linf, {1.0, 1.0}, {1.0, -1.0}).holds());

  CHECK(is_bj_orthogonal(linf, {1.0, 0.5}, {1.0, 0.0}).fails());
  const Decision oracle = bj_oracle(linf, {1.0, 0.5}, {1.0, 0.0});
  CHECK(oracle.fails());
  CHECK(linf.norm(add_scaled({1.0, 0.5}, -0.25, {1.0, 0.0})) == doctest::Approx(0.75));
}

TEST_CASE("zero anchors are rejected, zero directions are orthogonal") {
  const Space l2 = Space::lp(2.0, 2);
  CHECK_THROWS_AS(is_bj_orthogonal(l2, {0.0, 0.0}, {1.0, 0.0}), ZeroVectorError);
  CHECK_THROWS_AS(bj_oracle(l2, {0.0, 0.0}, {1.0, 0.0}), ZeroVectorError);
  CHECK(is_bj_orthogonal(l2, {1.0, 0.0}, {0.0, 0.0}).holds());
  CHECK(bj_oracle(l2, {1.0, 0.0}, {0.0, 0.0}).holds());
}

TEST_CASE("derivative decision agrees with the oracle on random triples") {
  Rng rng(17);
  const std::vector<Space> pool = {Space::lp(1.0, 2), Space::lp(2.0, 3), Space::lp(4.0, 2),
                                   Space::lp(kInf, 3)};
  const Tolerances tol;
  int compared = 0;
  for (int i = 0; i < 2000; ++i) {
    const Space& S = pool[std::size_t(i) % pool.size()];
    Vector x(std::size_t(S.dim())), y(std::size_t(S.dim()));
    for (double& c : x) c = rng.normal();
    for (double& c : y) c = rng.normal();
    if (S.norm(x) < 1e-3) continue;
    const double ny = S.norm(y);
    if (ny < 1e-3) continue;
    const auto d = one_sided_derivatives(S, x, y);
    if (std::abs(d.d_plus) / ny <= 10 * tol.eps_band) continue;
    if (std::abs(d.d_minus) / ny <= 10 * tol.eps_band) continue;
    ++compared;
    CHECK(is_bj_orthogonal(S, x, y).verdict == bj_oracle(S, x, y).verdict);
  }
  CHECK(compared > 1500);
}

TEST_CASE("membership verdicts are scale invariant") {
  Rng rng(23);
  const Space linf = Space::lp(kInf, 3);
  for (int i = 0; i < 200; ++i) {
    Vector x{rng.normal(), rng.normal(), rng.normal()};
    Vector y{rng.normal(), rng.normal(), rng.normal()};
    if (linf.norm(x) < 1e-3) continue;
    const double a = rng.uniform(0.01, 100.0), b = rng.uniform(0.01, 100.0);
    CHECK(in_positive_part(linf, x, y).verdict ==
          in_positive_part(linf, scaled(x, a), scaled(y, b)).verdict);
    CHECK(is_bj_orthogonal(linf, x, y).verdict ==
          is_bj_orthogonal(linf, scaled(x, a), scaled(y, b)).verdict);
  }
}

TEST_CASE("membership identities: x in x+, -x in x-") {
  Rng rng(29);
  const std::vector<Space> pool = {Space::lp(1.0, 2), Space::lp(2.0, 2), Space::lp(kInf, 2)};
  for (const Space& S : pool) {
    for (int i = 0; i < 100; ++i) {
      Vector x{rng.normal(), rng.normal()};
      if (S.norm(x) < 1e-6) continue;
      CHECK(in_positive_part(S, x, x).holds());
      CHECK(in_negative_part(S, x, negated(x)).holds());
    }
  }
}

}  // TEST_SUITE
