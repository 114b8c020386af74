#ifndef SIMPLEFRAC_BERNSTEIN_BOUNDS_HPP
#define SIMPLEFRAC_BERNSTEIN_BOUNDS_HPP

// Markov-Bernstein type bounds for P_n(x) = (x - a) p(x), p without roots on
// [-1,1]:
//
//   ||P'||* >= n min|P| / sqrt(T_n(a)^2 - 1),
//   ||P'||  >= 2n min|P| / (T_n(a) - T_{n-2}(a) + 3),
//
// valid for n >= 4 and a > sqrt(2) (3 sqrt n)^{1/n}; the weighted one already
// for a > sqrt(2), n >= 1. Witnesses of sharpness: T_n - T_n(a) and
// Q_n(a;x) = int_a^x T_{n-1}.

#include <optional>
#include <random>
#include <vector>

#include "simplefrac/cheb_series.hpp"
#include "simplefrac/extremal_fractions.hpp"
#include "simplefrac/log_derivative.hpp"

namespace simplefrac {

/// lead * (x - a) * prod (x - r_j). When a generator is attached, values and
/// derivatives come from it (it must be the same polynomial); the roots still
/// define the structure that is validated.
class RootedPolynomial {
public:
  /// Throws DomainError unless a is real with a > 1, the cofactor roots are
  /// finite, conjugate-closed and off [-1,1], and lead != 0.
  RootedPolynomial(double a, std::vector<cplx> cofactor_roots, double lead = 1.0);

  RootedPolynomial with_generator(ChebSeries<double> g) const;

  int n() const { return static_cast<int>(cofactor_.size()) + 1; }
  double a() const { return a_; }
  double lead() const { return lead_; }
  const std::vector<cplx>& cofactor_roots() const { return cofactor_; }
  const std::optional<ChebSeries<double>>& generator() const { return generator_; }

  double value(double x) const;
  double derivative(double x) const;

private:
  double a_;
  std::vector<cplx> cofactor_;
  double lead_;
  std::optional<ChebSeries<double>> generator_;
};

/// T_n - T_n(a) (roots on E_a).
RootedPolynomial chebyshev_witness(int n, double a);
/// Q_n(a;x) = (f(x) - f(a))/2, f = T_n/n - T_{n-2}/(n-2). Needs n >= 4, a > 1 + 1/n.
RootedPolynomial antiderivative_witness(int n, double a);

/// a > sqrt(2) (3 sqrt n)^{1/n}.
double corollary_threshold(int n);

struct CorollaryCheck {
  double lhs_w = 0.0;    // sup sqrt(1-x^2) |P'|
  double rhs_w = 0.0;
  double lhs_u = 0.0;    // sup |P'|
  double rhs_u = 0.0;
  double min_abs = 0.0;  // min |P| on [-1,1]
  double min_location = 0.0;
  bool holds_w = false;
  bool holds_u = false;
  bool both_hold = false;
};

/// Strict: OutOfTheoremRange unless n >= 4 and a > corollary_threshold(n).
/// Permissive still needs a > sqrt(2) (weighted range).
CorollaryCheck check_corollary(const RootedPolynomial& p, RangePolicy policy = RangePolicy::Strict,
                               double tol = 1e-12);

struct AsymptoticRatios {
  double r1 = 0.0;
  std::optional<double> r2_lower; // undefined for n <= 2
};

AsymptoticRatios asymptotic_ratios(int n, double a, RangePolicy policy = RangePolicy::Strict);

/// Cofactor roots drawn as joukowski(R e^{i theta}) with R beyond the
/// Joukowski radius of E_{min_ellipse} (and below that of E_{max_ellipse}),
/// so no root approaches [-1,1]. Real roots use theta in {0, pi}.
RootedPolynomial random_admissible(int n, double a, std::mt19937_64& rng, double min_ellipse = 1.2,
                                   double max_ellipse = 6.0);

} // namespace simplefrac

#endif
