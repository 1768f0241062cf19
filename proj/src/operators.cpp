#include "bjgeo/operators.hpp"

#include <chrono>
#include <cmath>

#include "bjgeo/minimize.hpp"
#include "bjgeo/orthogonality.hpp"
#include "bjgeo/product.hpp"
#include "bjgeo/rng.hpp"

namespace bjgeo {

OrthogonalityVerdict operators_orthogonal_witness(const BilinearOperator& T,
                                                  const BilinearOperator& A,
                                                  int starts, std::uint64_t seed,
                                                  const Tolerances& tol) {
  const NormAttainmentSet M = norm_attainment_set(T, starts, seed, tol);
  const Space& Z = T.space_z();

  OrthogonalityVerdict out;
  bool marginal_seen = false;
  double plus_margin = 0.0, minus_margin = 0.0;
  for (const auto& rep : M.orbits) {
    for (const auto& [mx, my] : expand_orbit(rep)) {
      const Vector tv = T.evaluate(mx, my);
      const Vector av = A.evaluate(mx, my);
      const Decision dp = in_positive_part(Z, tv, av, tol);
      if (dp.holds() && !out.plus_witness) {
        out.plus_witness = std::make_pair(mx, my);
        plus_margin = dp.margin;
      }
      const Decision dm = in_negative_part(Z, tv, av, tol);
      if (dm.holds() && !out.minus_witness) {
        out.minus_witness = std::make_pair(mx, my);
        minus_margin = dm.margin;
      }
      if (dp.inconclusive() || dm.inconclusive()) marginal_seen = true;
    }
    if (out.plus_witness && out.minus_witness) break;
  }

  if (out.plus_witness && out.minus_witness) {
    out.decision = Decision::yes(std::min(plus_margin, minus_margin),
                                 "witness pair found for both parts");
  } else if (!M.exact) {
    out.decision = Decision::maybe(0.0, "attainment set is heuristic; witnesses not found");
  } else if (marginal_seen) {
    out.decision = Decision::maybe(0.0, "a part membership was marginal");
  } else {
    out.decision = Decision::no(0.0, out.plus_witness ? "no negative-part witness"
                                                      : "no positive-part witness");
  }
  return out;
}

Decision operators_orthogonal_direct(const BilinearOperator& T,
                                     const BilinearOperator& A, int starts,
                                     std::uint64_t seed, const Tolerances& tol) {
  const double nt = bilinear_norm(T, starts, seed, tol).value;
  if (nt <= tol.eps_zero) throw ZeroOperatorError("orthogonality anchor is the zero operator");
  const double na = bilinear_norm(A, starts, seed, tol).value;
  if (na <= tol.eps_zero) return Decision::yes(0.0, "zero operator is orthogonal to everything");

  const double radius = 4.0 * nt / na;
  const auto phi = [&](double t) {
    return bilinear_norm(T.add_scaled(A, t), starts, seed, tol).value;
  };
  const ScalarMinimum m = grid_golden_minimize(phi, -radius, radius, 33, 1e-8);
  const double dip = (nt - m.value) / nt;
  if (dip <= kOperatorOracleDipTol) return Decision::yes(dip);
  return Decision::no(dip, "operator norm dips at t = " + std::to_string(m.arg));
}

Decision single_orbit_reduction(const BilinearOperator& T,
                                const BilinearOperator& A, int starts,
                                std::uint64_t seed, const Tolerances& tol) {
  const NormAttainmentSet M = norm_attainment_set(T, starts, seed, tol);
  if (!M.exact || M.orbits.size() != 1) {
    throw NotSingleOrbitError("reduction requires a certified single-orbit attainment set");
  }
  const auto& [x0, y0] = M.orbits.front();
  return is_bj_orthogonal(T.space_z(), T.evaluate(x0, y0), A.evaluate(x0, y0), tol);
}

Decision operator_smoothness(const BilinearOperator& T, int starts,
                             std::uint64_t seed, const Tolerances& tol) {
  const NormAttainmentSet M = norm_attainment_set(T, starts, seed, tol);
  if (M.orbits.size() != 1) {
    return Decision::no(double(M.orbits.size()),
                        "attainment set has " + std::to_string(M.orbits.size()) + " orbits");
  }
  if (!M.exact && M.runner_up > M.value - 10.0 * tol.eps_attain * std::max(1.0, M.value)) {
    return Decision::maybe(M.value - M.runner_up,
                           "runner-up stationary value too close to certify a single orbit");
  }
  const auto& [x0, y0] = M.orbits.front();
  const Decision d = T.space_z().is_smooth_point(T.evaluate(x0, y0), tol);
  if (d.holds()) return Decision::yes(d.margin, "single orbit with smooth image");
  if (d.fails()) return Decision::no(d.margin, "image of the attainment orbit is not smooth");
  return d;
}

double sip_identity_residual(const BilinearOperator& T,
                             const std::pair<Vector, Vector>& anchor,
                             const Vector& x, const Vector& y,
                             const SipSelector& sel_x, const SipSelector& sel_y,
                             const SipSelector& sel_1, const SipSelector& sel_2,
                             const Tolerances& tol,
                             std::optional<double> norm_value) {
  const auto& [x0, y0] = anchor;
  if (std::abs(T.space_x().norm(x0) - 1.0) > tol.eps_eq ||
      std::abs(T.space_y().norm(y0) - 1.0) > tol.eps_eq) {
    throw NotUnitError("identity anchor must be a unit pair");
  }
  const Space& Z = T.space_z();
  const Vector w0 = T.evaluate(x0, y0);
  const double lhs = sip_value(Z, sel_1, T.evaluate(x0, y), w0, tol) +
                     sip_value(Z, sel_2, T.evaluate(x, y0), w0, tol);
  const double nt = norm_value ? *norm_value : bilinear_norm(T, 64, 1, tol).value;
  const double rhs = nt * nt *
                     (sip_value(T.space_x(), sel_x, x, x0, tol) +
                      sip_value(T.space_y(), sel_y, y, y0, tol));
  return std::abs(lhs - rhs);
}

Decision verify_attainment_identity_smooth(const BilinearOperator& T, int samples,
                                           std::uint64_t seed, int starts,
                                           const Tolerances& tol) {
  const Space& X = T.space_x();
  const Space& Y = T.space_y();
  const Space& Z = T.space_z();
  if (!X.smooth_kind() || !Y.smooth_kind() || !Z.smooth_kind()) {
    throw NotSmoothSpacesError("identity verification requires smooth spaces");
  }
  const NormAttainmentSet M = norm_attainment_set(T, starts, seed, tol);
  const SipSelector sel = SipSelector::barycenter();  // unique on smooth spaces
  const double residual_tol = 1e-7;

  const auto xs = X.sample_sphere(samples, derive_seed(seed, 0xf0));
  const auto ys = Y.sample_sphere(samples, derive_seed(seed, 0xf1));

  // forward direction: the identity holds at every computed attainment orbit
  double worst = 0.0;
  for (const auto& rep : M.orbits) {
    for (int i = 0; i < samples; ++i) {
      const double r = sip_identity_residual(T, rep, xs[std::size_t(i)], ys[std::size_t(i)],
                                             sel, sel, sel, sel, tol, M.value);
      worst = std::max(worst, r);
      if (r > residual_tol) {
        return Decision::no(r, "identity residual " + std::to_string(r) +
                                   " at a computed attainment pair");
      }
    }
  }

  // converse direction: a pair passing the identity on all probes must attain
  const int converse_pairs = std::max(4, samples / 25);
  const int probes = std::min(samples, 32);
  const auto cx = X.sample_sphere(converse_pairs, derive_seed(seed, 0xf2));
  const auto cy = Y.sample_sphere(converse_pairs, derive_seed(seed, 0xf3));
  for (int k = 0; k < converse_pairs; ++k) {
    const std::pair<Vector, Vector> cand{cx[std::size_t(k)], cy[std::size_t(k)]};
    bool passes = true;
    for (int i = 0; i < probes && passes; ++i) {
      const double r = sip_identity_residual(T, cand, xs[std::size_t(i)], ys[std::size_t(i)],
                                             sel, sel, sel, sel, tol, M.value);
      passes = r <= residual_tol;
    }
    if (passes) {
      const double v = Z.norm(T.evaluate(cand.first, cand.second));
      if (v < M.value - tol.eps_attain * std::max(1.0, M.value)) {
        return Decision::no(M.value - v, "non-attaining pair satisfies the identity");
      }
    }
  }
  return Decision::yes(worst, "identity characterizes the computed attainment set");
}

LinearOperator linear_attains_at_smooth(const Space& X, const Space& Z,
                                        const Vector& x0, const Vector& z0,
                                        const Tolerances& tol) {
  if (std::abs(X.norm(x0) - 1.0) > tol.eps_eq) throw NotUnitError("anchor must be a unit vector");
  if (std::abs(Z.norm(z0) - 1.0) > tol.eps_eq) throw NotUnitError("target must be a unit vector");
  if (!X.is_smooth_point(x0, tol).holds()) {
    throw NotSmoothAnchorError("anchor is not a smooth point of its space");
  }
  const Vector f = X.support_barycenter(x0, tol);  // the unique functional
  std::vector<Vector> rows(z0.size());
  for (std::size_t l = 0; l < z0.size(); ++l) rows[l] = scaled(f, z0[l]);
  return LinearOperator(X, Z, std::move(rows));
}

namespace {

nlohmann::ordered_json check_entry(const std::string& check, const std::string& anchor,
                                   bool passed, nlohmann::ordered_json details,
                                   const Tolerances& tol, double runtime_ms) {
  nlohmann::ordered_json j;
  j["check"] = check;
  j["paper_anchor"] = anchor;
  j["verdict"] = passed ? "holds" : "fails";
  j["witnesses"] = std::move(details);
  j["residuals"] = nlohmann::ordered_json::array();
  j["tolerances"] = {{"eps_zero", tol.eps_zero},
                     {"eps_eq", tol.eps_eq},
                     {"eps_band", tol.eps_band},
                     {"eps_attain", tol.eps_attain}};
  j["runtime_ms"] = runtime_ms;
  return j;
}

}  // namespace

nlohmann::ordered_json example_report(const Tolerances& tol) {
  using clock = std::chrono::steady_clock;
  const auto t0 = clock::now();
  auto ms_since = [&t0]() {
    return std::chrono::duration<double, std::milli>(clock::now() - t0).count();
  };

  const BilinearOperator T = BilinearOperator::builtin("paper-example");
  nlohmann::ordered_json checks = nlohmann::ordered_json::array();

  // 1. defining values on the (1, +-1) basis pairs
  {
    const Vector u{1.0, 1.0}, w{1.0, -1.0};
    const bool ok = T.evaluate(u, u) == Vector{1.0, 0.0} &&
                    T.evaluate(u, w) == Vector{0.0, 0.0} &&
                    T.evaluate(w, u) == Vector{0.0, 0.0} &&
                    T.evaluate(w, w) == Vector{0.0, 0.0};
    nlohmann::ordered_json d;
    d["T((1,1),(1,1))"] = T.evaluate(u, u);
    checks.push_back(check_entry("defining-values", "builtin-operator-definition", ok,
                                 std::move(d), tol, ms_since()));
  }
  const BilinearNormResult nr = bilinear_norm(T, 64, 1, tol);
  // 2. operator norm exactly one (dyadic coefficients)
  {
    const bool ok = nr.exact && nr.value == 1.0;
    nlohmann::ordered_json d;
    d["value"] = nr.value;
    d["exact"] = nr.exact;
    checks.push_back(check_entry("operator-norm-exact-one", "bilinear-operator-norm", ok,
                                 std::move(d), tol, ms_since()));
  }
  // 3. a single attainment orbit {(+-(1,1), +-(1,1))}
  const NormAttainmentSet M = norm_attainment_set(T, 64, 1, tol);
  {
    const bool ok = M.exact && M.orbits.size() == 1 &&
                    M.orbits.front().first == Vector{1.0, 1.0} &&
                    M.orbits.front().second == Vector{1.0, 1.0};
    nlohmann::ordered_json d;
    d["orbits"] = nlohmann::ordered_json::array();
    for (const auto& [x, y] : M.orbits) d["orbits"].push_back({{"x", x}, {"y", y}});
    checks.push_back(check_entry("attainment-single-orbit", "norm-attainment-set", ok,
                                 std::move(d), tol, ms_since()));
  }
  // 4. the image (1, 0) is a smooth point of linf(2)
  {
    const Decision d = T.space_z().is_smooth_point(Vector{1.0, 0.0}, tol);
    nlohmann::ordered_json w;
    w["image"] = Vector{1.0, 0.0};
    w["supporting_functionals"] = d.holds() ? 1 : int(d.margin);
    checks.push_back(check_entry("image-smooth-point", "smooth-points-of-codomain",
                                 d.holds(), std::move(w), tol, ms_since()));
  }
  // 5. the operator itself is a smooth point of the operator space
  {
    const Decision d = operator_smoothness(T, 64, 1, tol);
    nlohmann::ordered_json w;
    w["verdict"] = to_string(d.verdict);
    checks.push_back(check_entry("operator-smoothness", "bilinear-operator-smoothness",
                                 d.holds(), std::move(w), tol, ms_since()));
  }
  return checks;
}

}  // namespace bjgeo
