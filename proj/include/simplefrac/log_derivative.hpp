#ifndef SIMPLEFRAC_LOG_DERIVATIVE_HPP
#define SIMPLEFRAC_LOG_DERIVATIVE_HPP

#include <complex>
#include <optional>
#include <span>
#include <vector>

#include "simplefrac/cheb_series.hpp"

namespace simplefrac {

using cplx = std::complex<double>;

/// Weight applied to a function on [-1,1] before taking a sup norm.
enum class Weight { None, Chebyshev };

/// 1 or sqrt(1 - x^2).
inline double weight_value(Weight w, double x) {
  return w == Weight::None ? 1.0 : std::sqrt(std::max(0.0, (1.0 - x) * (1.0 + x)));
}

/// Real-valued logarithmic derivative sum_k 1/(x - z_k).
///
/// The pole multiset is stored in canonical form: real poles, and one
/// representative (Im > 0) per conjugate pair. An optional generating
/// polynomial P (as a Chebyshev series with P'/P equal to this fraction) may
/// be attached by constructions that know it in closed form; evaluation then
/// uses P'(x)/P(x), which keeps full relative accuracy when the value is
/// many orders of magnitude below the individual pole terms.
class LogDerivative {
public:
  /// Pairs conjugates within `conj_tol` (relative); throws ConstructionError
  /// for an empty or non-conjugate-closed multiset.
  explicit LogDerivative(std::span<const cplx> poles, double conj_tol = 1e-12);

  static LogDerivative from_parts(std::vector<double> real_poles, std::vector<cplx> upper_poles);

  /// Same poles, evaluated through `p'/p`. The caller guarantees that the
  /// roots of `p` are exactly this pole multiset.
  LogDerivative with_generator(ChebSeries<double> p) const;
  LogDerivative without_generator() const;

  int degree() const { return static_cast<int>(real_.size() + 2 * pairs_.size()); }
  const std::vector<double>& real_poles() const { return real_; }
  const std::vector<cplx>& pair_poles() const { return pairs_; }
  const std::optional<ChebSeries<double>>& generator() const { return generator_; }
  const std::optional<ChebSeries<double>>& generator_derivative() const { return generator_prime_; }

  /// Full multiset: real poles ascending, then each pair as (z, conj z).
  std::vector<cplx> poles() const;

  double distance_to_poles(double x) const;
  double min_modulus() const;
  double min_pairwise_separation() const;
  bool has_pole_on_segment() const;

private:
  LogDerivative() = default;
  std::vector<double> real_;
  std::vector<cplx> pairs_;
  std::optional<ChebSeries<double>> generator_;
  std::optional<ChebSeries<double>> generator_prime_;
};

/// rho(x); uses the generator when attached, otherwise eval_pole_sum.
/// Throws EvaluationError within `pole_tol` of a pole.
double eval_ld(const LogDerivative& rho, double x, double pole_tol = 1e-14);

/// Pairwise-summed sum 1/(x - r) + sum 2(x - Re z)/|x - z|^2.
double eval_pole_sum(const LogDerivative& rho, double x, double pole_tol = 1e-14);

/// rho'(x) = -sum 1/(x - z_k)^2 (pole-sum form).
double eval_ld_derivative(const LogDerivative& rho, double x);

namespace detail {
double pairwise_sum(std::span<const double> terms);
}

} // namespace simplefrac

#endif
