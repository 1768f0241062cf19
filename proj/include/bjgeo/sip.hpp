#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "bjgeo/space.hpp"
#include "bjgeo/types.hpp"

namespace bjgeo {

/// Deterministic choice of a supporting functional f_x in J(x) for each unit
/// vector x. Every rule is odd (f_{-x} = -f_x exactly) and only ever applied
/// to x / ||x||, which makes the induced semi-inner-product homogeneous.
class SipSelector {
 public:
  /// Barycenter of the support-set extremes; on smooth spaces this is the
  /// unique supporting functional.
  static SipSelector barycenter();
  /// Lexicographically smallest extreme point.
  static SipSelector lex_smallest();
  /// k-th extreme point in lexicographic order (clamped to the last one).
  static SipSelector extreme_index(int k);

  /// The selected functional at x; requires ||x|| above eps_zero.
  Vector functional_at(const Space& X, const Vector& x, const Tolerances& tol = {}) const;

  const std::string& name() const { return name_; }

 private:
  enum class Rule { Barycenter, LexSmallest, ExtremeIndex };
  SipSelector(Rule rule, int k, std::string name)
      : rule_(rule), k_(k), name_(std::move(name)) {}
  Rule rule_;
  int k_ = 0;
  std::string name_;
};

/// The semi-inner-product [y, x] = ||x|| * f_{x/||x||}(y) induced by the
/// selector; [y, 0] = 0. Compatible with the norm: [x, x] = ||x||^2.
double sip_value(const Space& X, const SipSelector& sel, const Vector& y,
                 const Vector& x, const Tolerances& tol = {});

/// Samples random triples and scalars and checks the four semi-inner-product
/// axioms plus norm compatibility, each with slack 1e-9 at the sample scale.
/// Fails with a counterexample note on the first violated check.
Decision verify_sip_axioms(const Space& X, const SipSelector& sel, int samples,
                           std::uint64_t seed, const Tolerances& tol = {});

/// Finite selector family used for witness searches on non-smooth codomains:
/// the barycenter plus the first few extreme-point selectors.
std::vector<SipSelector> selector_family(int max_extremes = 3);

}  // namespace bjgeo
