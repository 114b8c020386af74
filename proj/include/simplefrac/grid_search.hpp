#ifndef SIMPLEFRAC_GRID_SEARCH_HPP
#define SIMPLEFRAC_GRID_SEARCH_HPP

// Dense-grid search with golden-section refinement. This is the one kernel
// behind every sup norm, min |P| and extremum detection in the library.

#include <functional>
#include <vector>

namespace simplefrac {

using RealFunction = std::function<double(double)>;

/// `count` Chebyshev-spaced points on [lo, hi] in ascending order, endpoints included.
std::vector<double> chebyshev_grid(int count, double lo = -1.0, double hi = 1.0);

struct Extremum {
  double location;
  double value;
};

/// Golden-section maximisation of a unimodal `g` on [lo, hi] down to a
/// bracket of width `tol`. Throws ToleranceNotMet after `max_iter` steps.
Extremum golden_maximize(const RealFunction& g, double lo, double hi, double tol, int max_iter = 400);

/// Global maximum of `g` on [lo, hi]: every grid-local maximum is refined by
/// golden_maximize on its neighbouring cells.
Extremum grid_maximize(const RealFunction& g, int grid_count, double tol, double lo = -1.0, double hi = 1.0);

/// Refined local extrema of |r| with their signed values, ascending in x.
/// Points where r vanishes identically on the grid are skipped.
std::vector<Extremum> local_extrema(const RealFunction& r, int grid_count, double tol);

/// Longest sign-alternating subsequence: consecutive runs of equal sign are
/// collapsed to their largest-magnitude member.
std::vector<Extremum> alternating_subsequence(const std::vector<Extremum>& extrema);

/// Sign-alternating extrema of a residual.
struct AlternanceReport {
  std::vector<double> points;
  std::vector<double> values;
  double level = 0.0;          // sup norm the points are compared against
  bool sign_pattern_ok = false;
  double tolerance = 0.0;      // relative level tolerance used for selection
};

} // namespace simplefrac

#endif
