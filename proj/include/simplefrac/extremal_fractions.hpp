#ifndef SIMPLEFRAC_EXTREMAL_FRACTIONS_HPP
#define SIMPLEFRAC_EXTREMAL_FRACTIONS_HPP

// Extremal and near-extremal logarithmic derivatives with a fixed real pole
// a > 1 on [-1,1]:
//
//   weighted problem   rho*_n(a;x) = n U_{n-1}(x) / (T_n(x) - T_n(a)),
//                      ||sqrt(1-x^2) rho*_n|| = n / sqrt(T_n(a)^2 - 1);
//   unweighted problem candidate T_{n-1}(x) / Q_n(a;x),
//                      Q_n(a;x) = (f(x) - f(a))/2, f = T_n/n - T_{n-2}/(n-2).

#include <optional>
#include <vector>

#include "simplefrac/config.hpp"
#include "simplefrac/grid_search.hpp"
#include "simplefrac/log_derivative.hpp"

namespace simplefrac {

/// Fractions of degree n whose pole set contains the real point a > 1.
struct FixedPoleClass {
  FixedPoleClass(int n, double a);
  int n;
  double a;
};

/// Strict raises OutOfTheoremRange outside an operation's hypothesis range;
/// Permissive builds anyway (the object is still well defined for a > 1).
enum class RangePolicy { Strict, Permissive };

/// sqrt(2): optimality of the weighted extremal fraction needs a above it.
double weighted_theorem_threshold();
/// sqrt(2) (3 sqrt n)^{1/n}: the unweighted bracket needs a above it.
double unweighted_theorem_threshold(int n);
/// a (3 sqrt n)^{-1/n}, the inner ellipse parameter of the candidate's pole annulus.
double inner_ellipse_parameter(int n, double a);

/// Poles joukowski((a + sqrt(a^2-1)) e^{2 pi i j/n}), j = 0..n-1, i.e. the
/// roots of T_n(x) - T_n(a). All lie on the ellipse E_a. The result carries
/// T_n - T_n(a) as its generator.
LogDerivative build_extremal_weighted(const FixedPoleClass& cls, RangePolicy policy = RangePolicy::Strict);

/// n / sqrt(T_n(a)^2 - 1), computed as n / sinh(n acosh a).
double extremal_weighted_norm(const FixedPoleClass& cls);

struct WeightedAlternance {
  AlternanceReport alternance; // the n roots of T_n(x) = 1/T_n(a)
  std::vector<double> zeros;   // cos(pi k/n), k = 0..n, ascending
};

WeightedAlternance alternance_points_weighted(const FixedPoleClass& cls);

/// Roots of Q_n(a;x) by Aberth-Ehrlich iteration from the dominant-balance
/// guesses joukowski((2n f(a))^{1/n} e^{2 pi i j/n}); the
/// root nearest a is pinned to a. Requires n >= 4 and a > 1 + 1/n.
LogDerivative build_candidate_unweighted(const FixedPoleClass& cls,
                                         const Tolerances& tol = default_tolerances());

/// Q_n(a;x) as a Chebyshev series.
ChebSeries<double> candidate_generator(const FixedPoleClass& cls);

struct LambdaBounds {
  double lower;
  double upper;
};

/// 2n / (T_n(a) - n/(n-2) T_{n-2}(a) +- 2(n-1)/(n-2)).
LambdaBounds lambda_bounds(const FixedPoleClass& cls);

struct PoleAnnulusReport {
  bool all_in_closure_ea = false;
  std::optional<bool> all_outside_et; // empty when t <= 1
  double t = 0.0;
  std::vector<double> residuals_ea;
  std::vector<double> residuals_et;
  double min_modulus = 0.0;
  bool all_outside_unit_disk = false;
};

PoleAnnulusReport verify_pole_annulus(const FixedPoleClass& cls, const LogDerivative& candidate,
                                      double on_tol = 1e-10);

struct NormEstimate {
  double value;
  double location;
  bool weighted;
  double refinement_tol;
};

NormEstimate weighted_sup_norm(const LogDerivative& rho, double tol = 1e-12, int grid_per_degree = 30);
NormEstimate sup_norm(const LogDerivative& rho, double tol = 1e-12, int grid_per_degree = 30);

/// Unweighted sup norm over [lo, hi].
NormEstimate sup_norm_on_interval(const LogDerivative& rho, double lo, double hi, double tol = 1e-12,
                                  int grid_per_degree = 30);

/// sigma with sigma(x) = mu rho(mu x + nu): poles (z_k - nu)/mu. The sup of
/// |rho| on [nu - mu, nu + mu] equals the sup of |sigma| on [-1,1] over mu.
LogDerivative affine_pullback(const LogDerivative& rho, double mu, double nu);

struct DvpBracket {
  double lower;
  double upper;
  /// upper (T_n(a) - T_{n-2}(a)) / (2n); only weak equivalence to 1 is known
  /// for finite n, so this is reported, not bounded.
  double ratio;
  std::vector<double> points; // cos(k pi/(n-1)), k = 0..n-1
  std::vector<double> values;
  bool alternates;
  PoleAnnulusReport annulus;
};

DvpBracket dvp_bracket(const FixedPoleClass& cls, const Tolerances& tol = default_tolerances());

/// sqrt(1-x^2) rho(x) or rho(x).
double weighted_value(const LogDerivative& rho, Weight w, double x);

} // namespace simplefrac

#endif
