#include "bjgeo/orthogonality.hpp"

#include <cmath>

#include "bjgeo/minimize.hpp"

namespace bjgeo {

OneSidedDerivatives one_sided_derivatives(const Space& X, const Vector& x,
                                          const Vector& y, const Tolerances& tol) {
  require_same_dim(x.size(), y.size(), "one_sided_derivatives");
  const SupportSet s = X.support_functionals(x, tol);
  OneSidedDerivatives d;
  bool first = true;
  for (const auto& f : s.extremes) {
    const double v = dot(f, y);
    if (first) {
      d.d_plus = d.d_minus = v;
      first = false;
    } else {
      d.d_plus = std::max(d.d_plus, v);
      d.d_minus = std::min(d.d_minus, v);
    }
  }
  return d;
}

namespace {

// Normalizes a one-sided derivative by ||y|| so verdicts are invariant under
// positive scalings of the direction.
double normalized(double d, double ny, const Tolerances& tol) {
  if (ny <= tol.eps_zero) return 0.0;
  return d / ny;
}

}  // namespace

Decision in_positive_part(const Space& X, const Vector& x, const Vector& y,
                          const Tolerances& tol) {
  const auto d = one_sided_derivatives(X, x, y, tol);
  const double q = normalized(d.d_plus, X.norm(y), tol);
  switch (classify_sign(q, tol)) {
    case SignClass::Zero:
    case SignClass::Positive:
      return Decision::yes(q);
    case SignClass::Negative:
      return Decision::no(q);
    default:
      return Decision::maybe(q, "d_plus within the marginal band");
  }
}

Decision in_negative_part(const Space& X, const Vector& x, const Vector& y,
                          const Tolerances& tol) {
  const auto d = one_sided_derivatives(X, x, y, tol);
  const double q = normalized(d.d_minus, X.norm(y), tol);
  switch (classify_sign(q, tol)) {
    case SignClass::Zero:
    case SignClass::Negative:
      return Decision::yes(-q);
    case SignClass::Positive:
      return Decision::no(-q);
    default:
      return Decision::maybe(-q, "d_minus within the marginal band");
  }
}

Decision is_bj_orthogonal(const Space& X, const Vector& x, const Vector& y,
                          const Tolerances& tol) {
  const auto d = one_sided_derivatives(X, x, y, tol);
  const double ny = X.norm(y);
  const double qp = normalized(d.d_plus, ny, tol);
  const double qm = normalized(d.d_minus, ny, tol);
  const SignClass cp = classify_sign(qp, tol);
  const SignClass cm = classify_sign(qm, tol);
  if (cp == SignClass::Negative) return Decision::no(qp, "norm decreases for t > 0");
  if (cm == SignClass::Positive) return Decision::no(-qm, "norm decreases for t < 0");
  if (cp == SignClass::Marginal || cm == SignClass::Marginal) {
    return Decision::maybe(std::min(qp, -qm), "one-sided derivative within the marginal band");
  }
  return Decision::yes(std::min(qp, -qm));
}

Decision ray_norm_min_oracle(const Space& X, const Vector& x, const Vector& y,
                             Ray ray, const Tolerances& tol) {
  const double nx = X.norm(x);
  if (nx <= tol.eps_zero) throw ZeroVectorError("oracle needs a non-zero anchor");
  const double ny = X.norm(y);
  if (ny <= tol.eps_zero) return Decision::yes(0.0, "zero direction");

  const double radius = 4.0 * nx / ny;
  double lo = -radius, hi = radius;
  if (ray == Ray::Forward) lo = 0.0;
  if (ray == Ray::Backward) hi = 0.0;

  const auto f = [&](double t) { return X.norm(add_scaled(x, t, y)); };
  const ScalarMinimum m = grid_golden_minimize(f, lo, hi, 33, 1e-10);

  const double dip = (nx - m.value) / nx;
  if (dip <= kOracleDipTol) return Decision::yes(dip);
  return Decision::no(dip, "norm dips at t = " + std::to_string(m.arg));
}

Decision bj_oracle(const Space& X, const Vector& x, const Vector& y,
                   const Tolerances& tol) {
  return ray_norm_min_oracle(X, x, y, Ray::Both, tol);
}

}  // namespace bjgeo
