#pragma once

#include "bjgeo/orthogonality.hpp"
#include "bjgeo/space.hpp"
#include "bjgeo/types.hpp"

namespace bjgeo {

/// Pair of factor vectors for a max-norm product space.
struct ProductVector {
  Vector x;
  Vector y;
};

/// Concatenated coordinates (the representation Space::product operates on).
Vector join(const ProductVector& v);

/// Splits concatenated coordinates back into the two factors.
ProductVector split(const Space& X, const Space& Y, const Vector& joined);

/// Same as Space::product; named entry point of this module.
Space product_descriptor(const Space& X, const Space& Y);

/// Closed-form membership of (u, v) in the positive part of (x, y), decided
/// on the factors: for ||x|| > ||y|| it is u in x^+ alone; for equal norms it
/// is u in x^+ or v in y^+. Near-ties inside the marginal band are
/// inconclusive because the two formulas genuinely differ there.
Decision factorwise_positive_part(const Space& X, const Space& Y,
                                  const ProductVector& anchor,
                                  const ProductVector& dir,
                                  const Tolerances& tol = {});

Decision factorwise_negative_part(const Space& X, const Space& Y,
                                  const ProductVector& anchor,
                                  const ProductVector& dir,
                                  const Tolerances& tol = {});

/// Closed-form Birkhoff-James orthogonality on the product: x^perp in the
/// dominant factor when the norms differ, and
/// (x^+ x y^-) union (x^- x y^+) on the diagonal.
Decision factorwise_orthogonality(const Space& X, const Space& Y,
                                  const ProductVector& anchor,
                                  const ProductVector& dir,
                                  const Tolerances& tol = {});

/// Smooth points of the product unit sphere: exactly one coordinate on its
/// unit sphere, strictly inside on the other, and smooth in its factor.
/// Requires ||(x, y)|| = 1 within eps_eq.
Decision is_smooth_point_product(const Space& X, const Space& Y,
                                 const ProductVector& anchor,
                                 const Tolerances& tol = {});

}  // namespace bjgeo
