#include "bjgeo/sip.hpp"

#include <cmath>
#include <sstream>

#include "bjgeo/rng.hpp"

namespace bjgeo {

SipSelector SipSelector::barycenter() {
  return SipSelector(Rule::Barycenter, 0, "barycenter");
}
SipSelector SipSelector::lex_smallest() {
  return SipSelector(Rule::LexSmallest, 0, "lex-smallest");
}
SipSelector SipSelector::extreme_index(int k) {
  return SipSelector(Rule::ExtremeIndex, k, "extreme-" + std::to_string(k));
}

Vector SipSelector::functional_at(const Space& X, const Vector& x,
                                  const Tolerances& tol) const {
  const double nx = X.norm(x);
  if (nx <= tol.eps_zero) throw ZeroVectorError("selector needs a non-zero anchor");
  Vector u = scaled(x, 1.0 / nx);

  // Evaluate on the canonical sign representative and flip the result back;
  // this makes every rule odd exactly, not just up to round-off.
  bool flipped = false;
  for (double c : u) {
    if (std::abs(c) > tol.eps_zero) {
      flipped = c < 0;
      break;
    }
  }
  if (flipped) u = negated(u);

  const SupportSet s = X.support_functionals(u, tol);
  Vector f;
  switch (rule_) {
    case Rule::Barycenter: {
      f.assign(u.size(), 0.0);
      for (const auto& e : s.extremes) {
        for (std::size_t i = 0; i < f.size(); ++i) f[i] += e[i];
      }
      const double inv = 1.0 / double(s.extremes.size());
      for (double& v : f) v *= inv;
      break;
    }
    case Rule::LexSmallest:
      f = s.extremes.front();  // extremes are sorted lexicographically
      break;
    case Rule::ExtremeIndex: {
      const std::size_t idx = std::min<std::size_t>(std::size_t(k_), s.extremes.size() - 1);
      f = s.extremes[idx];
      break;
    }
  }
  return flipped ? negated(f) : f;
}

double sip_value(const Space& X, const SipSelector& sel, const Vector& y,
                 const Vector& x, const Tolerances& tol) {
  require_same_dim(std::size_t(X.dim()), x.size(), "sip_value x");
  require_same_dim(std::size_t(X.dim()), y.size(), "sip_value y");
  const double nx = X.norm(x);
  if (nx <= tol.eps_zero) return 0.0;
  const Vector f = sel.functional_at(X, x, tol);
  return nx * dot(f, y);
}

namespace {

Vector random_point(const Space& X, Rng& rng) {
  Vector v(std::size_t(X.dim()));
  for (double& c : v) c = rng.normal();
  if (rng.coin(0.3)) {
    const double s = rng.uniform(0.1, 3.0);
    for (double& c : v) c *= s;
  }
  return v;
}

}  // namespace

Decision verify_sip_axioms(const Space& X, const SipSelector& sel, int samples,
                           std::uint64_t seed, const Tolerances& tol) {
  if (samples < 1) throw std::invalid_argument("samples must be >= 1");
  Rng rng(derive_seed(seed, 0x51b));
  const double slack = 1e-9;

  auto fail = [&](const char* axiom, int i, double err) {
    std::ostringstream os;
    os << axiom << " violated at sample " << i << " (error " << err << ")";
    return Decision::no(err, os.str());
  };

  for (int i = 0; i < samples; ++i) {
    const Vector x = random_point(X, rng);
    const Vector y = random_point(X, rng);
    const Vector z = random_point(X, rng);
    const double alpha = rng.uniform(-2.0, 2.0);
    const double beta = rng.uniform(-2.0, 2.0);

    const double nz = X.norm(z);
    if (nz <= tol.eps_zero) continue;

    // (a) additivity and homogeneity in the first slot
    {
      const Vector comb = add_scaled(scaled(x, alpha), beta, y);
      const double lhs = sip_value(X, sel, comb, z, tol);
      const double rhs = alpha * sip_value(X, sel, x, z, tol) +
                         beta * sip_value(X, sel, y, z, tol);
      const double scale = (std::abs(alpha) * X.norm(x) + std::abs(beta) * X.norm(y)) * nz + 1.0;
      if (std::abs(lhs - rhs) > slack * scale) {
        return fail("first-slot linearity", i, std::abs(lhs - rhs));
      }
    }
    // (b) positive definiteness and norm compatibility
    {
      const double xx = sip_value(X, sel, x, x, tol);
      const double nx = X.norm(x);
      if (nx > tol.eps_zero) {
        if (xx <= 0.0) return fail("positive definiteness", i, xx);
        if (std::abs(xx - nx * nx) > slack * nx * nx) {
          return fail("norm compatibility", i, std::abs(xx - nx * nx));
        }
      }
    }
    // (c) Cauchy-Schwarz
    {
      const double xy = sip_value(X, sel, x, y, tol);
      const double xx = sip_value(X, sel, x, x, tol);
      const double yy = sip_value(X, sel, y, y, tol);
      if (xy * xy > xx * yy + slack * (xx * yy + 1.0)) {
        return fail("cauchy-schwarz", i, xy * xy - xx * yy);
      }
    }
    // (d) homogeneity in the second slot
    {
      const double lhs = sip_value(X, sel, x, scaled(y, alpha), tol);
      const double rhs = alpha * sip_value(X, sel, x, y, tol);
      const double scale = std::abs(alpha) * X.norm(x) * X.norm(y) + 1.0;
      if (std::abs(lhs - rhs) > slack * scale) {
        return fail("second-slot homogeneity", i, std::abs(lhs - rhs));
      }
    }
  }
  return Decision::yes(double(samples), "all axioms satisfied");
}

std::vector<SipSelector> selector_family(int max_extremes) {
  std::vector<SipSelector> fam;
  fam.push_back(SipSelector::barycenter());
  for (int k = 0; k < max_extremes; ++k) fam.push_back(SipSelector::extreme_index(k));
  return fam;
}

}  // namespace bjgeo
