#pragma once

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "json.hpp"

#include "bjgeo/types.hpp"

namespace bjgeo {

enum class SpaceKind { LpSmooth, L1, LInf, Polyhedral, Product };

/// Extreme points of the set J(x) of norm-one supporting functionals at x.
/// Every listed f has dual norm 1 and attains f(x) = ||x||.
struct SupportSet {
  std::vector<Vector> extremes;
};

/// Immutable descriptor of a finite-dimensional real normed space.
///
/// Three families are supported: the lp scale (p = 1 and p = inf are distinct
/// kinds so their unit-ball vertices can be enumerated exactly), polyhedral
/// norms given by a spanning, negation-closed set of facet functionals, and
/// binary products under the max norm. Product vectors are the concatenation
/// of the factor coordinates.
class Space {
 public:
  /// lp norm of the given dimension; p = 1 and p = inf map to the exact
  /// polyhedral kinds, 1 < p < inf to the smooth kind.
  static Space lp(double p, int dim);

  /// Norm x -> max_f |f(x)| over the facet list. The list is closed under
  /// negation on construction and must span the dual space.
  static Space polyhedral(int dim, std::vector<Vector> facets);

  /// X x Y under ||(x, y)|| = max(||x||, ||y||).
  static Space product(const Space& left, const Space& right);

  SpaceKind kind() const;
  int dim() const;
  double p() const;                          ///< lp kinds only
  const std::vector<Vector>& facets() const; ///< Polyhedral only
  Space left() const;                        ///< Product only
  Space right() const;                       ///< Product only

  /// True when the unit ball is a polytope whose vertices can be enumerated.
  bool polyhedral_kind() const;
  /// True when every non-zero point is a smooth point (lp with 1 < p < inf).
  bool smooth_kind() const;

  double norm(const Vector& x) const;
  double dual_norm(const Vector& f) const;

  /// Extreme points of J(x); requires ||x|| above eps_zero.
  SupportSet support_functionals(const Vector& x, const Tolerances& tol = {}) const;

  /// Barycenter of the support-set extremes: a deterministic element of J(x).
  Vector support_barycenter(const Vector& x, const Tolerances& tol = {}) const;

  /// Holds iff J(x) has exactly one extreme point after dedup.
  Decision is_smooth_point(const Vector& x, const Tolerances& tol = {}) const;

  /// Vertices of the unit ball; throws NotPolyhedralError for smooth kinds.
  std::vector<Vector> extreme_points_ball() const;

  /// Deterministic-under-seed unit vectors: normal directions normalized by
  /// this space's norm.
  std::vector<Vector> sample_sphere(int count, std::uint64_t seed) const;

  std::string describe() const;

  nlohmann::json to_json() const;
  static Space from_json(const nlohmann::json& j);
  /// Accepts the compact syntax ("lp:inf:2", "product(lp:2:2,lp:1:3)") or a
  /// JSON object.
  static Space parse(const std::string& text);

 private:
  struct Node;
  explicit Space(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  std::shared_ptr<const Node> node_;
};

}  // namespace bjgeo
