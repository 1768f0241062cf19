#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace bjgeo {

/// Coordinate vector. Functionals use the same representation and act on
/// vectors through the standard dot-product pairing.
using Vector = std::vector<double>;

/// Numeric thresholds used throughout the library. All defaults assume
/// desk-scale inputs (coordinates roughly in [1e-6, 1e6]).
struct Tolerances {
  double eps_zero = 1e-12;   ///< zero-vector test
  double eps_eq = 1e-9;      ///< norm-equality and dedup threshold
  double eps_band = 1e-7;    ///< marginal band; verdicts inside are inconclusive
  double eps_attain = 1e-8;  ///< membership slack for norm-attainment sets
};

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};
struct ZeroVectorError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotPolyhedralError : std::domain_error {
  using std::domain_error::domain_error;
};
struct ZeroOperatorError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotSingleOrbitError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotSmoothAnchorError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotUnitError : std::domain_error {
  using std::domain_error::domain_error;
};
struct NotSmoothSpacesError : std::domain_error {
  using std::domain_error::domain_error;
};

// ---------------------------------------------------------------------------
// Tri-state decisions
// ---------------------------------------------------------------------------

enum class Verdict { Holds, Fails, Inconclusive };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::Holds: return "holds";
    case Verdict::Fails: return "fails";
    default: return "inconclusive";
  }
}

/// Verdict plus a numeric certificate. `margin` is the normalized quantity the
/// verdict was derived from (a one-sided derivative, a norm dip, ...), so a
/// caller can see how far from the boundary the instance was.
struct Decision {
  Verdict verdict = Verdict::Inconclusive;
  double margin = 0.0;
  std::string note;

  bool holds() const { return verdict == Verdict::Holds; }
  bool fails() const { return verdict == Verdict::Fails; }
  bool inconclusive() const { return verdict == Verdict::Inconclusive; }

  static Decision yes(double margin, std::string note = {}) {
    return {Verdict::Holds, margin, std::move(note)};
  }
  static Decision no(double margin, std::string note = {}) {
    return {Verdict::Fails, margin, std::move(note)};
  }
  static Decision maybe(double margin, std::string note = {}) {
    return {Verdict::Inconclusive, margin, std::move(note)};
  }
};

/// Conjunction: a definite failure of either side settles the question.
inline Decision decision_and(const Decision& a, const Decision& b) {
  if (a.fails()) return a;
  if (b.fails()) return b;
  if (a.inconclusive()) return a;
  if (b.inconclusive()) return b;
  return Decision::yes(std::min(a.margin, b.margin));
}

/// Disjunction: a definite success of either side settles the decision.
inline Decision decision_or(const Decision& a, const Decision& b) {
  if (a.holds()) return a;
  if (b.holds()) return b;
  if (a.inconclusive()) return a;
  if (b.inconclusive()) return b;
  return Decision::no(std::max(a.margin, b.margin));
}

/// Sign classification of a normalized quantity. Values within eps_eq of zero
/// count as exactly zero (the non-strict boundary of the defining
/// inequalities); values between eps_eq and eps_band are too close to call.
enum class SignClass { Zero, Positive, Negative, Marginal };

inline SignClass classify_sign(double v, const Tolerances& tol) {
  const double a = std::abs(v);
  if (a <= tol.eps_eq) return SignClass::Zero;
  if (a <= tol.eps_band) return SignClass::Marginal;
  return v > 0 ? SignClass::Positive : SignClass::Negative;
}

// ---------------------------------------------------------------------------
// Small dense-vector helpers
// ---------------------------------------------------------------------------

inline void require_same_dim(std::size_t expected, std::size_t got, const char* what) {
  if (expected != got) {
    throw DimensionMismatch(std::string(what) + ": expected dimension " +
                            std::to_string(expected) + ", got " + std::to_string(got));
  }
}

inline double dot(const Vector& a, const Vector& b) {
  require_same_dim(a.size(), b.size(), "dot");
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

inline Vector add_scaled(const Vector& a, double t, const Vector& b) {
  require_same_dim(a.size(), b.size(), "add_scaled");
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + t * b[i];
  return r;
}

inline Vector scaled(const Vector& a, double t) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = t * a[i];
  return r;
}

inline Vector negated(const Vector& a) {
  Vector r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = -a[i];
  return r;
}

inline double max_abs(const Vector& a) {
  double m = 0.0;
  for (double v : a) m = std::max(m, std::abs(v));
  return m;
}

inline double max_abs_diff(const Vector& a, const Vector& b) {
  require_same_dim(a.size(), b.size(), "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

inline bool lex_less(const Vector& a, const Vector& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end());
}

inline Vector concat(const Vector& a, const Vector& b) {
  Vector r = a;
  r.insert(r.end(), b.begin(), b.end());
  return r;
}

inline bool all_finite(const Vector& a) {
  return std::all_of(a.begin(), a.end(), [](double v) { return std::isfinite(v); });
}

/// Flips the sign of v so that its first coordinate of significant magnitude
/// is positive. Maps v and -v to the same representative.
inline void flip_to_canonical_sign(Vector& v, double zero_tol = 1e-11) {
  for (double c : v) {
    if (std::abs(c) > zero_tol) {
      if (c < 0) {
        for (double& x : v) x = -x;
      }
      return;
    }
  }
}

}  // namespace bjgeo
