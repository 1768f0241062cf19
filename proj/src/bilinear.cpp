#include "bjgeo/bilinear.hpp"

#include <cmath>
#include <limits>

#include "bjgeo/detail/linalg.hpp"
#include "bjgeo/rng.hpp"

namespace bjgeo {

// ---------------------------------------------------------------------------
// LinearOperator
// ---------------------------------------------------------------------------

LinearOperator::LinearOperator(Space domain, Space codomain, std::vector<Vector> rows)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), rows_(std::move(rows)) {
  require_same_dim(std::size_t(codomain_.dim()), rows_.size(), "operator rows");
  for (const auto& r : rows_) {
    require_same_dim(std::size_t(domain_.dim()), r.size(), "operator row width");
    if (!all_finite(r)) throw std::invalid_argument("operator entry is not finite");
  }
}

Vector LinearOperator::apply(const Vector& v) const {
  require_same_dim(std::size_t(domain_.dim()), v.size(), "apply");
  Vector out(rows_.size(), 0.0);
  for (std::size_t l = 0; l < rows_.size(); ++l) out[l] = dot(rows_[l], v);
  return out;
}

Vector LinearOperator::transpose_apply(const Vector& f) const {
  require_same_dim(rows_.size(), f.size(), "transpose_apply");
  Vector out(std::size_t(domain_.dim()), 0.0);
  for (std::size_t l = 0; l < rows_.size(); ++l) {
    for (std::size_t j = 0; j < out.size(); ++j) out[j] += f[l] * rows_[l][j];
  }
  return out;
}

namespace {

void sort_dedup_vectors(std::vector<Vector>& vs, double tol) {
  std::sort(vs.begin(), vs.end(), lex_less);
  std::vector<Vector> out;
  for (auto& v : vs) {
    bool dup = false;
    for (const auto& u : out) {
      if (max_abs_diff(u, v) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(v));
  }
  vs = std::move(out);
}

// Inverse duality map on a smooth lp space: the unit vector whose supporting
// functional is proportional to g. For lp this is the lq duality formula.
Vector inverse_duality(const Space& X, const Vector& g) {
  const double p = X.p();
  const double q = p / (p - 1.0);
  Vector x(g.size());
  for (std::size_t i = 0; i < g.size(); ++i) {
    const double a = std::abs(g[i]);
    x[i] = (g[i] >= 0 ? 1.0 : -1.0) * std::pow(a, q - 1.0);
    if (a == 0.0) x[i] = 0.0;
  }
  const double n = X.norm(x);
  if (n <= 0.0) return x;
  for (double& c : x) c /= n;
  return x;
}

// Warm-started ascent of v -> ||A v|| on the domain unit sphere: tries the
// duality fixed-point candidate first, then falls back to projected
// subgradient steps with halving. Monotone by construction.
std::pair<Vector, double> ascend_linear(const LinearOperator& A, Vector v,
                                        const Tolerances& tol) {
  const Space& X = A.domain();
  const Space& Z = A.codomain();
  double best = Z.norm(A.apply(v));
  for (int it = 0; it < 300; ++it) {
    const Vector img = A.apply(v);
    const double nimg = Z.norm(img);
    if (nimg <= tol.eps_zero) break;  // stuck in the kernel; rely on restarts
    const Vector f = Z.support_barycenter(img, tol);
    const Vector grad = A.transpose_apply(f);

    Vector cand;
    if (X.smooth_kind() && X.kind() == SpaceKind::LpSmooth) {
      cand = inverse_duality(X, grad);
    } else {
      cand = grad;
      const double n = X.norm(cand);
      if (n <= tol.eps_zero) break;
      for (double& c : cand) c /= n;
    }

    double improved = Z.norm(A.apply(cand));
    if (improved <= best + 1e-15 * std::max(1.0, best)) {
      // line search between the current point and the candidate
      bool accepted = false;
      for (double t = 0.5; t > 1e-12; t *= 0.5) {
        Vector mid = add_scaled(v, t, add_scaled(cand, -1.0, v));
        const double n = X.norm(mid);
        if (n <= tol.eps_zero) continue;
        for (double& c : mid) c /= n;
        const double val = Z.norm(A.apply(mid));
        if (val > best + 1e-15 * std::max(1.0, best)) {
          cand = std::move(mid);
          improved = val;
          accepted = true;
          break;
        }
      }
      if (!accepted) break;
    }
    const double gain = improved - best;
    v = std::move(cand);
    best = improved;
    if (gain < 1e-13 * std::max(1.0, best)) break;
  }
  return {std::move(v), best};
}

}  // namespace

LinearNormResult linear_norm(const LinearOperator& A, int starts,
                             std::uint64_t seed, const Tolerances& tol) {
  LinearNormResult res;
  const Space& X = A.domain();
  const Space& Z = A.codomain();

  if (X.polyhedral_kind()) {
    res.exact = true;
    std::vector<std::pair<Vector, double>> evals;
    for (const auto& u : X.extreme_points_ball()) {
      evals.emplace_back(u, Z.norm(A.apply(u)));
      res.value = std::max(res.value, evals.back().second);
    }
    const double slack = tol.eps_attain * std::max(1.0, res.value);
    for (auto& [u, v] : evals) {
      if (v >= res.value - slack) {
        Vector rep = u;
        flip_to_canonical_sign(rep);
        res.maximizers.push_back(std::move(rep));
      }
    }
    sort_dedup_vectors(res.maximizers, 1e-9);
    return res;
  }

  res.exact = false;
  std::vector<std::pair<Vector, double>> found;
  const auto start_points = X.sample_sphere(starts, derive_seed(seed, 0xa11));
  for (const auto& s : start_points) {
    auto [v, val] = ascend_linear(A, s, tol);
    res.value = std::max(res.value, val);
    found.emplace_back(std::move(v), val);
  }
  const double slack = tol.eps_attain * std::max(1.0, res.value);
  std::vector<Vector> winners;
  for (auto& [v, val] : found) {
    if (val >= res.value - slack) {
      flip_to_canonical_sign(v);
      winners.push_back(std::move(v));
    }
  }
  sort_dedup_vectors(winners, 1e-6);
  res.maximizers = std::move(winners);
  return res;
}

// ---------------------------------------------------------------------------
// BilinearOperator
// ---------------------------------------------------------------------------

BilinearOperator::BilinearOperator(Space X, Space Y, Space Z, std::vector<double> coeffs_flat)
    : x_(std::move(X)), y_(std::move(Y)), z_(std::move(Z)), coeffs_(std::move(coeffs_flat)) {
  const std::size_t expected = std::size_t(x_.dim()) * std::size_t(y_.dim()) * std::size_t(z_.dim());
  require_same_dim(expected, coeffs_.size(), "coefficient tensor");
  for (double c : coeffs_) {
    if (!std::isfinite(c)) throw std::invalid_argument("tensor entry is not finite");
  }
}

BilinearOperator BilinearOperator::from_nested(Space X, Space Y, Space Z,
                                               const std::vector<std::vector<Vector>>& coeffs) {
  const int dx = X.dim(), dy = Y.dim(), dz = Z.dim();
  require_same_dim(std::size_t(dx), coeffs.size(), "tensor first index");
  std::vector<double> flat;
  flat.reserve(std::size_t(dx) * dy * dz);
  for (const auto& plane : coeffs) {
    require_same_dim(std::size_t(dy), plane.size(), "tensor second index");
    for (const auto& fiber : plane) {
      require_same_dim(std::size_t(dz), fiber.size(), "tensor third index");
      flat.insert(flat.end(), fiber.begin(), fiber.end());
    }
  }
  return BilinearOperator(std::move(X), std::move(Y), std::move(Z), std::move(flat));
}

BilinearOperator BilinearOperator::builtin(const std::string& name) {
  if (name == "paper-example") {
    const Space l2inf = Space::lp(std::numeric_limits<double>::infinity(), 2);
    // T(x, y) = ((x1 + x2)(y1 + y2) / 4, 0): every c[i][j] fiber is (1/4, 0).
    std::vector<double> flat(8, 0.0);
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) flat[std::size_t((i * 2 + j) * 2)] = 0.25;
    }
    return BilinearOperator(l2inf, l2inf, l2inf, std::move(flat));
  }
  throw std::invalid_argument("unknown builtin operator: " + name);
}

double BilinearOperator::coeff(int i, int j, int l) const {
  return coeffs_[std::size_t((i * y_.dim() + j) * z_.dim() + l)];
}

Vector BilinearOperator::evaluate(const Vector& x, const Vector& y) const {
  require_same_dim(std::size_t(x_.dim()), x.size(), "evaluate x");
  require_same_dim(std::size_t(y_.dim()), y.size(), "evaluate y");
  const int dy = y_.dim(), dz = z_.dim();
  Vector out(std::size_t(dz), 0.0);
  std::size_t idx = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    for (int j = 0; j < dy; ++j) {
      const double w = x[i] * y[std::size_t(j)];
      for (int l = 0; l < dz; ++l) out[std::size_t(l)] += w * coeffs_[idx++];
    }
  }
  return out;
}

LinearOperator BilinearOperator::fix_first(const Vector& x0) const {
  require_same_dim(std::size_t(x_.dim()), x0.size(), "fix_first");
  const int dy = y_.dim(), dz = z_.dim();
  std::vector<Vector> rows(std::size_t(dz), Vector(std::size_t(dy), 0.0));
  for (std::size_t i = 0; i < x0.size(); ++i) {
    for (int j = 0; j < dy; ++j) {
      for (int l = 0; l < dz; ++l) {
        rows[std::size_t(l)][std::size_t(j)] += coeff(int(i), j, l) * x0[i];
      }
    }
  }
  return LinearOperator(y_, z_, std::move(rows));
}

LinearOperator BilinearOperator::fix_second(const Vector& y0) const {
  require_same_dim(std::size_t(y_.dim()), y0.size(), "fix_second");
  const int dx = x_.dim(), dz = z_.dim();
  std::vector<Vector> rows(std::size_t(dz), Vector(std::size_t(dx), 0.0));
  for (int i = 0; i < dx; ++i) {
    for (std::size_t j = 0; j < y0.size(); ++j) {
      for (int l = 0; l < dz; ++l) {
        rows[std::size_t(l)][std::size_t(i)] += coeff(i, int(j), l) * y0[j];
      }
    }
  }
  return LinearOperator(x_, z_, std::move(rows));
}

BilinearOperator BilinearOperator::scaled_by(double a) const {
  std::vector<double> flat = coeffs_;
  for (double& c : flat) c *= a;
  return BilinearOperator(x_, y_, z_, std::move(flat));
}

BilinearOperator BilinearOperator::add_scaled(const BilinearOperator& other, double a) const {
  require_same_dim(coeffs_.size(), other.coeffs_.size(), "tensor sum");
  std::vector<double> flat = coeffs_;
  for (std::size_t k = 0; k < flat.size(); ++k) flat[k] += a * other.coeffs_[k];
  return BilinearOperator(x_, y_, z_, std::move(flat));
}

double BilinearOperator::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

nlohmann::json BilinearOperator::to_json() const {
  nlohmann::json j;
  j["X"] = x_.to_json();
  j["Y"] = y_.to_json();
  j["Z"] = z_.to_json();
  const int dy = y_.dim(), dz = z_.dim();
  nlohmann::json coeffs = nlohmann::json::array();
  for (int i = 0; i < x_.dim(); ++i) {
    nlohmann::json plane = nlohmann::json::array();
    for (int j2 = 0; j2 < dy; ++j2) {
      nlohmann::json fiber = nlohmann::json::array();
      for (int l = 0; l < dz; ++l) fiber.push_back(coeff(i, j2, l));
      plane.push_back(std::move(fiber));
    }
    coeffs.push_back(std::move(plane));
  }
  j["coeffs"] = std::move(coeffs);
  return j;
}

BilinearOperator BilinearOperator::from_json(const nlohmann::json& j) {
  Space X = Space::from_json(j.at("X"));
  Space Y = Space::from_json(j.at("Y"));
  Space Z = Space::from_json(j.at("Z"));
  const auto coeffs = j.at("coeffs").get<std::vector<std::vector<Vector>>>();
  return from_nested(std::move(X), std::move(Y), std::move(Z), coeffs);
}

// ---------------------------------------------------------------------------
// Bilinear norms and attainment
// ---------------------------------------------------------------------------

namespace {

struct PairCandidate {
  Vector x;
  Vector y;
  double value = 0.0;
};

bool pair_lex_less(const PairCandidate& a, const PairCandidate& b) {
  if (a.x != b.x) return lex_less(a.x, b.x);
  return lex_less(a.y, b.y);
}

void dedup_pairs(std::vector<PairCandidate>& cands, double tol) {
  std::sort(cands.begin(), cands.end(), pair_lex_less);
  std::vector<PairCandidate> out;
  for (auto& c : cands) {
    bool dup = false;
    for (const auto& u : out) {
      if (max_abs_diff(u.x, c.x) <= tol && max_abs_diff(u.y, c.y) <= tol) {
        dup = true;
        break;
      }
    }
    if (!dup) out.push_back(std::move(c));
  }
  cands = std::move(out);
}

bool invertible_duality(const Space& S) {
  return S.kind() == SpaceKind::LpSmooth || (S.dim() == 1 && S.kind() != SpaceKind::Product);
}

Vector inverse_duality_any(const Space& S, const Vector& g) {
  if (S.dim() == 1) {
    return Vector{g[0] >= 0 ? 1.0 : -1.0};
  }
  return inverse_duality(S, g);
}

// Residual of the first-order optimality system for maximizing ||T(x, y)||
// over the two unit spheres: gradients proportional to the duality maps plus
// the two norm constraints. z packs (x, y, lambda, mu).
Vector stationarity_residual(const BilinearOperator& T, const Vector& z,
                             const Tolerances& tol) {
  const Space& X = T.space_x();
  const Space& Y = T.space_y();
  const Space& Z = T.space_z();
  const int nx = X.dim(), ny = Y.dim();
  const Vector x(z.begin(), z.begin() + nx);
  const Vector y(z.begin() + nx, z.begin() + nx + ny);
  const double lambda = z[std::size_t(nx + ny)];
  const double mu = z[std::size_t(nx + ny + 1)];

  Vector out(std::size_t(nx + ny + 2), 0.0);
  const Vector w = T.evaluate(x, y);
  if (Z.norm(w) <= tol.eps_zero || X.norm(x) <= tol.eps_zero || Y.norm(y) <= tol.eps_zero) {
    out[0] = 1.0;  // off the manifold; reject
    return out;
  }
  const Vector fz = Z.support_barycenter(w, tol);
  const Vector gx = T.fix_second(y).transpose_apply(fz);
  const Vector gy = T.fix_first(x).transpose_apply(fz);
  const Vector fx = X.support_barycenter(x, tol);
  const Vector fy = Y.support_barycenter(y, tol);
  for (int i = 0; i < nx; ++i) out[std::size_t(i)] = gx[std::size_t(i)] - lambda * fx[std::size_t(i)];
  for (int j = 0; j < ny; ++j) out[std::size_t(nx + j)] = gy[std::size_t(j)] - mu * fy[std::size_t(j)];
  out[std::size_t(nx + ny)] = X.norm(x) - 1.0;
  out[std::size_t(nx + ny + 1)] = Y.norm(y) - 1.0;
  return out;
}

double linf_norm(const Vector& v) { return max_abs(v); }

// Refinement of a maximizer pair on smooth spaces. The value-improvement
// stop of the alternation leaves the pair about sqrt(improvement) away from
// stationarity, while the attainment-identity residual is first order in
// that distance; Newton on the optimality system closes the gap. Falls back
// to the incoming pair whenever a step misbehaves.
void polish_smooth_pair(const BilinearOperator& T, Vector& x, Vector& y,
                        const Tolerances& tol) {
  const Space& X = T.space_x();
  const Space& Y = T.space_y();
  const Space& Z = T.space_z();
  if (!invertible_duality(X) || !invertible_duality(Y) || !Z.smooth_kind()) return;
  const int nx = X.dim(), ny = Y.dim();
  const int n = nx + ny + 2;

  const double entry_value = Z.norm(T.evaluate(x, y));
  Vector z;
  z.reserve(std::size_t(n));
  z.insert(z.end(), x.begin(), x.end());
  z.insert(z.end(), y.begin(), y.end());
  z.push_back(entry_value);
  z.push_back(entry_value);

  double res = linf_norm(stationarity_residual(T, z, tol));
  for (int it = 0; it < 40 && res > 1e-13; ++it) {
    // finite-difference Jacobian; central differences
    std::vector<Vector> J(std::size_t(n), Vector(std::size_t(n), 0.0));
    const double h = 1e-6;
    for (int c = 0; c < n; ++c) {
      Vector zp = z, zm = z;
      zp[std::size_t(c)] += h;
      zm[std::size_t(c)] -= h;
      const Vector fp = stationarity_residual(T, zp, tol);
      const Vector fm = stationarity_residual(T, zm, tol);
      for (int r = 0; r < n; ++r) {
        J[std::size_t(r)][std::size_t(c)] = (fp[std::size_t(r)] - fm[std::size_t(r)]) / (2.0 * h);
      }
    }
    Vector rhs = stationarity_residual(T, z, tol);
    for (double& v : rhs) v = -v;
    Vector step;
    if (!detail::solve_square(std::move(J), std::move(rhs), step, 1e-14)) break;
    if (linf_norm(step) > 0.5) break;  // outside the local basin
    Vector z_next = z;
    for (int c = 0; c < n; ++c) z_next[std::size_t(c)] += step[std::size_t(c)];
    const double res_next = linf_norm(stationarity_residual(T, z_next, tol));
    if (!(res_next < res)) break;
    z = std::move(z_next);
    res = res_next;
  }

  Vector px(z.begin(), z.begin() + nx);
  Vector py(z.begin() + nx, z.begin() + nx + ny);
  const double nxv = X.norm(px), nyv = Y.norm(py);
  if (nxv <= tol.eps_zero || nyv <= tol.eps_zero) return;
  for (double& c : px) c /= nxv;
  for (double& c : py) c /= nyv;
  if (Z.norm(T.evaluate(px, py)) >= entry_value - 1e-9 * std::max(1.0, entry_value)) {
    x = std::move(px);
    y = std::move(py);
  }
}

// One maximizer of v -> ||A v|| warm-started at v0 (exact argmax on
// polyhedral domains).
std::pair<Vector, double> slice_argmax(const LinearOperator& A, const Vector& v0,
                                       const Tolerances& tol) {
  const Space& X = A.domain();
  const Space& Z = A.codomain();
  if (X.polyhedral_kind()) {
    Vector best;
    double best_val = -1.0;
    for (const auto& u : X.extreme_points_ball()) {
      const double v = Z.norm(A.apply(u));
      if (v > best_val) {
        best_val = v;
        best = u;
      }
    }
    return {std::move(best), best_val};
  }
  return ascend_linear(A, v0, tol);
}

}  // namespace

BilinearNormResult bilinear_norm(const BilinearOperator& T, int starts,
                                 std::uint64_t seed, const Tolerances& tol,
                                 bool force_iterative) {
  BilinearNormResult res;
  const Space& X = T.space_x();
  const Space& Y = T.space_y();
  const Space& Z = T.space_z();

  std::vector<PairCandidate> cands;

  if (!force_iterative && X.polyhedral_kind() && Y.polyhedral_kind()) {
    res.exact = true;
    const auto ux = X.extreme_points_ball();
    const auto uy = Y.extreme_points_ball();
    for (const auto& u : ux) {
      for (const auto& v : uy) {
        const double val = Z.norm(T.evaluate(u, v));
        res.value = std::max(res.value, val);
        cands.push_back({u, v, val});
      }
    }
  } else {
    res.exact = false;
    Rng rng(derive_seed(seed, 0xb1b));
    const auto xs = X.sample_sphere(starts, rng.next());
    const auto ys = Y.sample_sphere(starts, rng.next());
    for (int s = 0; s < starts; ++s) {
      Vector x = xs[std::size_t(s)];
      Vector y = ys[std::size_t(s)];
      double value = Z.norm(T.evaluate(x, y));
      for (int it = 0; it < 200; ++it) {
        Vector ny_ = slice_argmax(T.fix_first(x), y, tol).first;
        if (Y.norm(ny_) > tol.eps_zero) y = std::move(ny_);
        Vector nx_ = slice_argmax(T.fix_second(y), x, tol).first;
        if (X.norm(nx_) > tol.eps_zero) x = std::move(nx_);
        const double improved = Z.norm(T.evaluate(x, y));
        if (improved <= value + 1e-12) {
          value = std::max(value, improved);
          break;
        }
        value = improved;
      }
      polish_smooth_pair(T, x, y, tol);
      value = std::max(value, Z.norm(T.evaluate(x, y)));
      res.value = std::max(res.value, value);
      cands.push_back({std::move(x), std::move(y), value});
    }
    dedup_pairs(cands, 1e-6);
  }

  const double slack = tol.eps_attain * std::max(1.0, res.value);
  for (auto& c : cands) {
    if (c.value >= res.value - slack) {
      res.pairs.emplace_back(std::move(c.x), std::move(c.y));
    } else {
      res.runner_up = std::max(res.runner_up, c.value);
    }
  }
  return res;
}

std::vector<std::pair<Vector, Vector>> expand_orbit(const std::pair<Vector, Vector>& rep) {
  const auto& [x, y] = rep;
  return {{x, y}, {negated(x), y}, {x, negated(y)}, {negated(x), negated(y)}};
}

NormAttainmentSet norm_attainment_set(const BilinearOperator& T, int starts,
                                      std::uint64_t seed, const Tolerances& tol) {
  const BilinearNormResult nr = bilinear_norm(T, starts, seed, tol);
  if (nr.value <= tol.eps_zero) {
    throw ZeroOperatorError("norm attainment set of the zero operator is the whole sphere");
  }
  NormAttainmentSet out;
  out.value = nr.value;
  out.exact = nr.exact;
  out.runner_up = nr.runner_up;

  std::vector<PairCandidate> reps;
  for (const auto& [x, y] : nr.pairs) {
    Vector ux = x, uy = y;
    const double nx = T.space_x().norm(ux);
    const double ny = T.space_y().norm(uy);
    if (nx <= tol.eps_zero || ny <= tol.eps_zero) continue;
    for (double& c : ux) c /= nx;
    for (double& c : uy) c /= ny;
    flip_to_canonical_sign(ux);
    flip_to_canonical_sign(uy);
    reps.push_back({std::move(ux), std::move(uy), nr.value});
  }
  dedup_pairs(reps, nr.exact ? 1e-9 : 1e-6);
  for (auto& r : reps) out.orbits.emplace_back(std::move(r.x), std::move(r.y));
  return out;
}

}  // namespace bjgeo
