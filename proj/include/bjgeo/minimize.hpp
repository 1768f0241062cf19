#pragma once

#include <utility>

namespace bjgeo {

struct ScalarMinimum {
  double arg = 0.0;
  double value = 0.0;
  int evals = 0;
};

/// Golden-section search on [lo, hi]. Correct for convex (hence unimodal)
/// objectives; returns the best evaluated point, endpoints included.
template <class F>
ScalarMinimum golden_section_minimize(F&& f, double lo, double hi,
                                      double width, int max_iter = 400) {
  constexpr double invphi = 0.6180339887498948482;  // 1/phi
  ScalarMinimum best;
  auto eval = [&](double t) {
    const double v = f(t);
    ++best.evals;
    if (best.evals == 1 || v < best.value) {
      best.value = v;
      best.arg = t;
    }
    return v;
  };

  double a = lo, b = hi;
  eval(a);
  eval(b);
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = eval(c);
  double fd = eval(d);
  for (int it = 0; it < max_iter && (b - a) > width; ++it) {
    if (fc < fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = eval(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = eval(d);
    }
  }
  return best;
}

/// Coarse grid scan followed by golden-section refinement on the bracketing
/// cell around the best grid point.
template <class F>
ScalarMinimum grid_golden_minimize(F&& f, double lo, double hi, int grid,
                                   double width, int max_iter = 400) {
  if (grid < 3) grid = 3;
  int best_i = 0;
  double best_v = 0.0;
  for (int i = 0; i < grid; ++i) {
    const double t = lo + (hi - lo) * double(i) / double(grid - 1);
    const double v = f(t);
    if (i == 0 || v < best_v) {
      best_v = v;
      best_i = i;
    }
  }
  const double cell = (hi - lo) / double(grid - 1);
  const double a = (best_i == 0) ? lo : lo + cell * (best_i - 1);
  const double b = (best_i == grid - 1) ? hi : lo + cell * (best_i + 1);
  ScalarMinimum m = golden_section_minimize(f, a, b, width, max_iter);
  m.evals += grid;
  if (best_v < m.value) {
    m.value = best_v;
    m.arg = lo + cell * best_i;
  }
  return m;
}

}  // namespace bjgeo
