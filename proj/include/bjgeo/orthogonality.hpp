#pragma once

#include "bjgeo/space.hpp"
#include "bjgeo/types.hpp"

namespace bjgeo {

/// One-sided directional derivatives of t -> ||x + t y|| at t = 0. Standard
/// convex analysis: d_plus is the maximum of f(y) over the supporting
/// functionals at x, d_minus the minimum, and d_minus <= d_plus always.
struct OneSidedDerivatives {
  double d_plus = 0.0;
  double d_minus = 0.0;
};

OneSidedDerivatives one_sided_derivatives(const Space& X, const Vector& x,
                                          const Vector& y, const Tolerances& tol = {});

/// y lies in the positive part of x iff ||x + t y|| >= ||x|| for all t >= 0,
/// equivalently d_plus >= 0. Decided on d_plus normalized by ||y||; values in
/// the marginal band are inconclusive.
Decision in_positive_part(const Space& X, const Vector& x, const Vector& y,
                          const Tolerances& tol = {});

/// Mirror image: d_minus <= 0.
Decision in_negative_part(const Space& X, const Vector& x, const Vector& y,
                          const Tolerances& tol = {});

/// Birkhoff-James orthogonality x is orthogonal to y: the norm cannot be
/// decreased by moving along y (d_minus <= 0 <= d_plus).
Decision is_bj_orthogonal(const Space& X, const Vector& x, const Vector& y,
                          const Tolerances& tol = {});

/// Relative norm-dip threshold for the 1-D minimization oracles: a computed
/// minimum below ||x|| by more than this fraction certifies a dip. Set just
/// above evaluation round-off so that marginal derivative margins (which
/// produce quadratically small dips on smooth norms) resolve consistently
/// with the derivative route.
inline constexpr double kOracleDipTol = 1e-14;

enum class Ray { Forward, Backward, Both };

/// Independent oracle for the part/orthogonality memberships: minimizes the
/// convex map t -> ||x + t y|| over the requested ray by a coarse grid plus
/// golden-section refinement, and compares the minimum with ||x||. The
/// bracket radius 4 ||x|| / ||y|| is sound: outside it the value exceeds
/// 3 ||x||.
Decision ray_norm_min_oracle(const Space& X, const Vector& x, const Vector& y,
                             Ray ray, const Tolerances& tol = {});

/// ray_norm_min_oracle over both rays: the direct-definition check of
/// Birkhoff-James orthogonality.
Decision bj_oracle(const Space& X, const Vector& x, const Vector& y,
                   const Tolerances& tol = {});

}  // namespace bjgeo
