#include <cmath>
#include <limits>

#include "doctest.h"

#include "bjgeo/rng.hpp"
#include "bjgeo/sip.hpp"

using namespace bjgeo;

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

TEST_SUITE("sip") {

TEST_CASE("values coincide with the inner product on l2") {
  const Space S = Space::lp(2.0, 2);
  const SipSelector sel = SipSelector::barycenter();
  CHECK(sip_value(S, sel, {1.0, 0.0}, {3.0, 4.0}) == doctest::Approx(3.0).epsilon(1e-12));
  Rng rng(7);
  for (int i = 0; i < 200; ++i) {
    const Vector x{rng.normal(), rng.normal()};
    const Vector y{rng.normal(), rng.normal()};
    CHECK(sip_value(S, sel, y, x) == doctest::Approx(dot(y, x)).epsilon(1e-9).scale(1.0));
  }
}

TEST_CASE("barycenter selection at a corner of linf") {
  const Space S = Space::lp(kInf, 2);
  // J((1,1)) has extremes (1,0) and (0,1); their barycenter is (1/2, 1/2)
  CHECK(sip_value(S, SipSelector::barycenter(), {2.0, 0.0}, {1.0, 1.0}) == doctest::Approx(1.0));
}

TEST_CASE("norm compatibility [x,x] = ||x||^2") {
  Rng rng(11);
  const std::vector<Space> pool = {Space::lp(1.0, 3), Space::lp(2.0, 2), Space::lp(4.0, 2),
                                   Space::lp(kInf, 3)};
  const SipSelector sel = SipSelector::barycenter();
  for (const Space& S : pool) {
    for (int i = 0; i < 250; ++i) {
      Vector x(std::size_t(S.dim()));
      for (double& c : x) c = rng.normal();
      const double n = S.norm(x);
      if (n < 1e-6) continue;
      CHECK(std::abs(sip_value(S, sel, x, x) - n * n) <= 1e-9 * n * n);
    }
  }
  CHECK(sip_value(Space::lp(2.0, 2), sel, {1.0, 1.0}, {0.0, 0.0}) == 0.0);
}

TEST_CASE("axioms verify on the sampled spaces") {
  const SipSelector sel = SipSelector::barycenter();
  CHECK(verify_sip_axioms(Space::lp(2.0, 3), sel, 1000, 3).holds());
  CHECK(verify_sip_axioms(Space::lp(kInf, 3), sel, 1000, 3).holds());
  CHECK(verify_sip_axioms(Space::lp(1.0, 3), sel, 1000, 3).holds());
  CHECK_THROWS_AS(verify_sip_axioms(Space::lp(2.0, 2), sel, 0, 3), std::invalid_argument);
}

TEST_CASE("all selectors coincide on smooth spaces") {
  Rng rng(13);
  for (double p : {1.5, 2.0, 4.0}) {
    const Space S = Space::lp(p, 3);
    for (int i = 0; i < 100; ++i) {
      const Vector x{rng.normal(), rng.normal(), rng.normal()};
      const Vector y{rng.normal(), rng.normal(), rng.normal()};
      if (S.norm(x) < 1e-6) continue;
      const double base = sip_value(S, SipSelector::barycenter(), y, x);
      for (const auto& sel : selector_family(3)) {
        CHECK(sip_value(S, sel, y, x) == doctest::Approx(base).epsilon(1e-9));
      }
    }
  }
}

TEST_CASE("selectors are exactly odd in the second slot") {
  Rng rng(17);
  const std::vector<Space> pool = {Space::lp(1.0, 2), Space::lp(kInf, 3), Space::lp(2.0, 2)};
  for (const Space& S : pool) {
    for (const auto& sel : selector_family(2)) {
      for (int i = 0; i < 100; ++i) {
        Vector x(std::size_t(S.dim())), y(std::size_t(S.dim()));
        for (double& c : x) c = rng.normal();
        for (double& c : y) c = rng.normal();
        if (S.norm(x) < 1e-6) continue;
        CHECK(sip_value(S, sel, y, negated(x)) == -sip_value(S, sel, y, x));
      }
    }
  }
}

TEST_CASE("second-slot positive homogeneity is built in") {
  Rng rng(19);
  const Space S = Space::lp(kInf, 2);
  const SipSelector sel = SipSelector::barycenter();
  for (int i = 0; i < 100; ++i) {
    const Vector x{rng.normal(), rng.normal()};
    const Vector y{rng.normal(), rng.normal()};
    const double a = rng.uniform(0.01, 10.0);
    if (S.norm(x) < 1e-6) continue;
    CHECK(sip_value(S, sel, y, scaled(x, a)) ==
          doctest::Approx(a * sip_value(S, sel, y, x)).epsilon(1e-12));
  }
}

}  // TEST_SUITE
