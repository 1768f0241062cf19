#pragma once

#include <cstdint>
#include <optional>
#include <utility>

#include "json.hpp"

#include "bjgeo/bilinear.hpp"
#include "bjgeo/sip.hpp"
#include "bjgeo/space.hpp"
#include "bjgeo/types.hpp"

namespace bjgeo {

/// Outcome of the witness-based operator-orthogonality decision, with the
/// attainment pairs certifying each side when found.
struct OrthogonalityVerdict {
  Decision decision;
  std::optional<std::pair<Vector, Vector>> plus_witness;
  std::optional<std::pair<Vector, Vector>> minus_witness;
};

/// T is Birkhoff-James orthogonal to A iff some attainment pair puts A's
/// image in the positive part of T's image and some (possibly different,
/// possibly sign-flipped) pair puts it in the negative part. Searches all
/// four signed members of every computed orbit. Inconclusive when the
/// attainment set is inexact (or a membership test was marginal) and the
/// witnesses were not found.
OrthogonalityVerdict operators_orthogonal_witness(const BilinearOperator& T,
                                                  const BilinearOperator& A,
                                                  int starts = 64,
                                                  std::uint64_t seed = 1,
                                                  const Tolerances& tol = {});

/// Relative dip threshold for the operator-level minimization oracle. Looser
/// than the vector-level one because each evaluation is itself a computed
/// operator norm.
inline constexpr double kOperatorOracleDipTol = 1e-9;

/// Direct oracle: minimizes the convex map t -> ||T + t A|| by grid plus
/// golden section (bracket 4 ||T|| / ||A||, width 1e-8) and compares the
/// minimum against ||T||.
Decision operators_orthogonal_direct(const BilinearOperator& T,
                                     const BilinearOperator& A,
                                     int starts = 64, std::uint64_t seed = 1,
                                     const Tolerances& tol = {});

/// When M_T is a certified single sign orbit {(+-x0, +-y0)}, T is orthogonal
/// to A iff T(x0, y0) is orthogonal to A(x0, y0) in the codomain. Throws
/// NotSingleOrbitError otherwise.
Decision single_orbit_reduction(const BilinearOperator& T,
                                const BilinearOperator& A, int starts = 64,
                                std::uint64_t seed = 1, const Tolerances& tol = {});

/// T is a smooth point of the operator space iff its attainment set is a
/// single sign orbit and the image of that orbit is a smooth point of the
/// codomain. On heuristic (non-exact) attainment sets the verdict follows the
/// computed set, except that a runner-up value inside ten attainment slacks
/// of the maximum makes the single-orbit claim uncertifiable (inconclusive).
Decision operator_smoothness(const BilinearOperator& T, int starts = 64,
                             std::uint64_t seed = 1, const Tolerances& tol = {});

/// Absolute difference between the two sides of the attainment identity
///   [T(x0,y), T(x0,y0)]_1 + [T(x,y0), T(x0,y0)]_2
///     = ||T||^2 ([x,x0]_X + [y,y0]_Y)
/// evaluated with the supplied selectors. (x0, y0) must be a unit pair.
/// Pass the operator norm when it is already known to avoid recomputation.
double sip_identity_residual(const BilinearOperator& T,
                             const std::pair<Vector, Vector>& anchor,
                             const Vector& x, const Vector& y,
                             const SipSelector& sel_x, const SipSelector& sel_y,
                             const SipSelector& sel_1, const SipSelector& sel_2,
                             const Tolerances& tol = {},
                             std::optional<double> norm_value = std::nullopt);

/// On smooth spaces the selectors are unique, so the identity above is an
/// exact characterization of M_T. Checks it in both directions: residuals at
/// every computed attainment orbit stay below 1e-7, and any random unit pair
/// that passes the identity on all samples must itself attain the norm.
Decision verify_attainment_identity_smooth(const BilinearOperator& T, int samples,
                                           std::uint64_t seed, int starts = 64,
                                           const Tolerances& tol = {});

/// Rank-one operator x -> f_{x0}(x) z0 built from the unique supporting
/// functional at a smooth unit anchor: it has norm one and attains it at x0.
/// Contrast: a non-zero bilinear operator never attains its norm at a smooth
/// point of the product sphere.
LinearOperator linear_attains_at_smooth(const Space& X, const Space& Z,
                                        const Vector& x0, const Vector& z0,
                                        const Tolerances& tol = {});

/// Runs the five checks of the builtin "paper-example" operator (defining
/// values, exact norm 1, single attainment orbit, smooth image, operator
/// smoothness) and returns one report object per check.
nlohmann::ordered_json example_report(const Tolerances& tol = {});

}  // namespace bjgeo
