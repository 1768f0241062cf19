#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "bjgeo/space.hpp"
#include "bjgeo/types.hpp"

namespace bjgeo {

/// Bounded linear operator between two descriptors, stored as a dense matrix
/// rows[l][j] acting by (A v)_l = sum_j rows[l][j] v_j.
class LinearOperator {
 public:
  LinearOperator(Space domain, Space codomain, std::vector<Vector> rows);

  Vector apply(const Vector& v) const;
  const Space& domain() const { return domain_; }
  const Space& codomain() const { return codomain_; }
  const std::vector<Vector>& rows() const { return rows_; }

  /// A^T f as a functional on the domain.
  Vector transpose_apply(const Vector& f) const;

 private:
  Space domain_;
  Space codomain_;
  std::vector<Vector> rows_;
};

struct LinearNormResult {
  double value = 0.0;
  std::vector<Vector> maximizers;  ///< unit vectors, sign-canonical, sorted
  bool exact = false;              ///< true for the vertex-enumeration path
};

/// Operator norm sup ||A v|| over the domain unit sphere. Exact by vertex
/// enumeration on polyhedral-kind domains (the objective is convex, so the
/// supremum over the ball is attained at a vertex); otherwise multi-start
/// projected ascent, whose value is a certified lower bound.
LinearNormResult linear_norm(const LinearOperator& A, int starts = 64,
                             std::uint64_t seed = 1, const Tolerances& tol = {});

/// Bilinear operator X x Y -> Z as a coefficient tensor c[i][j][l] over the
/// standard bases: T(e_i, f_j) = sum_l c[i][j][l] g_l.
class BilinearOperator {
 public:
  BilinearOperator(Space X, Space Y, Space Z, std::vector<double> coeffs_flat);

  static BilinearOperator from_nested(Space X, Space Y, Space Z,
                                      const std::vector<std::vector<Vector>>& coeffs);

  /// Named builtin operators; "paper-example" is the rank-one map on
  /// linf(2) x linf(2) with T((1,1),(1,1)) = (1,0) and zero on the other
  /// (1,+-1)-basis pairs, i.e. T(x,y) = ((x1+x2)(y1+y2)/4, 0).
  static BilinearOperator builtin(const std::string& name);

  const Space& space_x() const { return x_; }
  const Space& space_y() const { return y_; }
  const Space& space_z() const { return z_; }
  double coeff(int i, int j, int l) const;
  const std::vector<double>& coeffs_flat() const { return coeffs_; }

  Vector evaluate(const Vector& x, const Vector& y) const;

  /// The slice y -> T(x0, y).
  LinearOperator fix_first(const Vector& x0) const;
  /// The slice x -> T(x, y0).
  LinearOperator fix_second(const Vector& y0) const;

  BilinearOperator scaled_by(double a) const;
  /// T + a * other (same shapes required).
  BilinearOperator add_scaled(const BilinearOperator& other, double a) const;

  double max_abs_coeff() const;

  nlohmann::json to_json() const;
  static BilinearOperator from_json(const nlohmann::json& j);

 private:
  Space x_, y_, z_;
  std::vector<double> coeffs_;  // ((i * dimY) + j) * dimZ + l
};

struct BilinearNormResult {
  double value = 0.0;
  std::vector<std::pair<Vector, Vector>> pairs;  ///< attaining unit pairs
  bool exact = false;
  /// Best candidate value strictly below the attainment slack; 0 when none.
  double runner_up = 0.0;
};

/// ||T|| = sup ||T(x, y)|| over ||x|| = ||y|| = 1. Exact extreme-pair
/// enumeration when both factor spaces are polyhedral-kind (the map is
/// separately convex); otherwise seeded multi-start alternating maximization
/// whose inner step is warm-started ascent. force_iterative runs the
/// alternating path even on polyhedral factors, as a cross-check against the
/// enumerated value.
BilinearNormResult bilinear_norm(const BilinearOperator& T, int starts = 64,
                                 std::uint64_t seed = 1, const Tolerances& tol = {},
                                 bool force_iterative = false);

/// M_T grouped into sign orbits (x, y) ~ (+-x, +-y); representatives are sign
/// canonical and each satisfies ||T(x,y)|| >= value - eps_attain.
struct NormAttainmentSet {
  double value = 0.0;
  std::vector<std::pair<Vector, Vector>> orbits;
  bool exact = false;
  double runner_up = 0.0;
};

NormAttainmentSet norm_attainment_set(const BilinearOperator& T, int starts = 64,
                                      std::uint64_t seed = 1, const Tolerances& tol = {});

/// The four signed members (+-x, +-y) of one orbit representative.
std::vector<std::pair<Vector, Vector>> expand_orbit(const std::pair<Vector, Vector>& rep);

}  // namespace bjgeo
