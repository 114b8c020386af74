#ifndef SIMPLEFRAC_CONFIG_HPP
#define SIMPLEFRAC_CONFIG_HPP

#include <iosfwd>
#include <string>

namespace simplefrac {

/// Numerical tolerances shared by all modules. Defaults are the documented
/// values; a key=value file (see load_tolerances) may override any of them.
struct Tolerances {
  double ellipse_on = 1e-12;        // |residual| below which a point is On an ellipse
  double pole_proximity = 1e-14;    // eval refuses x closer than this to a pole
  double conjugate_match = 1e-12;   // relative tolerance when pairing conjugate poles
  double solve_residual = 1e-13;    // |T_n(x) - c| gate for solve_T_equals
  double sup_refine = 1e-12;        // golden-section bracket width for sup norms
  int grid_per_degree = 30;         // sup-norm grid density
  double root_residual = 1e-10;     // relative Newton-step gate for polynomial roots
  double alternance_rel = 1e-3;     // level-equality tolerance for alternance detection
  double pole_separation = 1e-9;    // pairwise distinct threshold in certification
  double borchardt = 1e-10;         // relative residual of det A - det B * per B
  double komarov = 1e-9;            // absolute residual of the decomposition identity
};

const Tolerances& default_tolerances();

/// Parses `key = value` lines (blank lines and `#` comments ignored) on top of
/// `base`. Unknown keys and unparsable values throw std::invalid_argument.
Tolerances parse_tolerances(std::istream& in, Tolerances base = default_tolerances());
Tolerances load_tolerances(const std::string& path, Tolerances base = default_tolerances());

} // namespace simplefrac

#endif
