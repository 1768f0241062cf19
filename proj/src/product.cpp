#include "bjgeo/product.hpp"

#include <cmath>

namespace bjgeo {

Vector join(const ProductVector& v) { return concat(v.x, v.y); }

ProductVector split(const Space& X, const Space& Y, const Vector& joined) {
  require_same_dim(std::size_t(X.dim() + Y.dim()), joined.size(), "split");
  ProductVector out;
  out.x.assign(joined.begin(), joined.begin() + X.dim());
  out.y.assign(joined.begin() + X.dim(), joined.end());
  return out;
}

Space product_descriptor(const Space& X, const Space& Y) {
  return Space::product(X, Y);
}

namespace {

enum class Branch { LeftDominant, RightDominant, Tie, Marginal };

Branch norm_branch(const Space& X, const Space& Y, const ProductVector& a,
                   const Tolerances& tol, double& nx, double& ny) {
  nx = X.norm(a.x);
  ny = Y.norm(a.y);
  const double scale = std::max(nx, ny);
  if (scale <= tol.eps_zero) throw ZeroVectorError("zero anchor in the product space");
  const double gap = std::abs(nx - ny);
  if (gap <= tol.eps_eq * scale) return Branch::Tie;
  if (gap <= tol.eps_band * scale) return Branch::Marginal;
  return nx > ny ? Branch::LeftDominant : Branch::RightDominant;
}

}  // namespace

Decision factorwise_positive_part(const Space& X, const Space& Y,
                                  const ProductVector& anchor,
                                  const ProductVector& dir,
                                  const Tolerances& tol) {
  double nx, ny;
  switch (norm_branch(X, Y, anchor, tol, nx, ny)) {
    case Branch::LeftDominant:
      return in_positive_part(X, anchor.x, dir.x, tol);
    case Branch::RightDominant:
      return in_positive_part(Y, anchor.y, dir.y, tol);
    case Branch::Tie:
      return decision_or(in_positive_part(X, anchor.x, dir.x, tol),
                         in_positive_part(Y, anchor.y, dir.y, tol));
    default:
      return Decision::maybe(std::abs(nx - ny), "factor norms in the marginal band");
  }
}

Decision factorwise_negative_part(const Space& X, const Space& Y,
                                  const ProductVector& anchor,
                                  const ProductVector& dir,
                                  const Tolerances& tol) {
  double nx, ny;
  switch (norm_branch(X, Y, anchor, tol, nx, ny)) {
    case Branch::LeftDominant:
      return in_negative_part(X, anchor.x, dir.x, tol);
    case Branch::RightDominant:
      return in_negative_part(Y, anchor.y, dir.y, tol);
    case Branch::Tie:
      return decision_or(in_negative_part(X, anchor.x, dir.x, tol),
                         in_negative_part(Y, anchor.y, dir.y, tol));
    default:
      return Decision::maybe(std::abs(nx - ny), "factor norms in the marginal band");
  }
}

Decision factorwise_orthogonality(const Space& X, const Space& Y,
                                  const ProductVector& anchor,
                                  const ProductVector& dir,
                                  const Tolerances& tol) {
  double nx, ny;
  switch (norm_branch(X, Y, anchor, tol, nx, ny)) {
    case Branch::LeftDominant:
      return is_bj_orthogonal(X, anchor.x, dir.x, tol);
    case Branch::RightDominant:
      return is_bj_orthogonal(Y, anchor.y, dir.y, tol);
    case Branch::Tie: {
      const Decision xp = in_positive_part(X, anchor.x, dir.x, tol);
      const Decision xm = in_negative_part(X, anchor.x, dir.x, tol);
      const Decision yp = in_positive_part(Y, anchor.y, dir.y, tol);
      const Decision ym = in_negative_part(Y, anchor.y, dir.y, tol);
      return decision_or(decision_and(xp, ym), decision_and(xm, yp));
    }
    default:
      return Decision::maybe(std::abs(nx - ny), "factor norms in the marginal band");
  }
}

Decision is_smooth_point_product(const Space& X, const Space& Y,
                                 const ProductVector& anchor,
                                 const Tolerances& tol) {
  const double nx = X.norm(anchor.x);
  const double ny = Y.norm(anchor.y);
  const double n = std::max(nx, ny);
  if (std::abs(n - 1.0) > tol.eps_eq) {
    throw NotUnitError("anchor is not on the product unit sphere");
  }
  const double lo = std::min(nx, ny);
  if (lo >= 1.0 - tol.eps_eq) {
    return Decision::no(lo, "both coordinates on their unit spheres");
  }
  if (lo >= 1.0 - tol.eps_band) {
    return Decision::maybe(lo, "smaller coordinate marginally near its sphere");
  }
  if (nx > ny) return X.is_smooth_point(anchor.x, tol);
  return Y.is_smooth_point(anchor.y, tol);
}

}  // namespace bjgeo
