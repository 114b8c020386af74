#ifndef SIMPLEFRAC_CHEB_CORE_HPP
#define SIMPLEFRAC_CHEB_CORE_HPP

// Chebyshev polynomials of both kinds on and off [-1,1], the Joukowski map,
// the equation T_n(x) = c and Bernstein-ellipse geometry.
//
// All evaluation goes through closed forms or three-term recurrences; the
// monomial expansion of T_n / U_n is never formed.

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <string>
#include <vector>

#include "simplefrac/errors.hpp"

namespace simplefrac {

enum class ChebKind { First, Second };

template <typename Scalar>
using Complex = std::complex<Scalar>;

namespace detail {

template <typename Scalar>
void require_finite(const Complex<Scalar>& z, const char* what) {
  if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
    throw DomainError(std::string(what) + ": non-finite argument");
}

// Forward recurrence; valid anywhere, used off the interval for moderate n
// where it is exact on integers and does not overflow.
template <typename T>
T cheb_recurrence(ChebKind kind, int n, const T& x) {
  T prev(1);
  if (n == 0) return prev;
  T cur = (kind == ChebKind::First) ? x : T(2) * x;
  for (int k = 1; k < n; ++k) {
    T next = T(2) * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

// Largest n for which the off-interval recurrence is used before switching
// to the log-scaled hyperbolic form.
inline constexpr int kRecurrenceLimit = 64;

} // namespace detail

/// Real evaluation of T_n(x) or U_n(x).
///
/// |x| <= 1 uses cos(n acos x) and sin((n+1)t)/sin t; |x| > 1 uses the
/// recurrence up to degree 64 and the hyperbolic form cosh(n acosh|x|)
/// (resp. sinh((n+1)t)/sinh t) beyond, evaluated through logarithms so the
/// result saturates to +-inf instead of producing inf/inf.
template <typename Scalar>
Scalar eval_cheb(ChebKind kind, int n, Scalar x) {
  if (n < 0) throw DomainError("eval_cheb: negative degree");
  if (!std::isfinite(x)) throw DomainError("eval_cheb: non-finite argument");
  using std::abs;
  if (x == Scalar(1)) return kind == ChebKind::First ? Scalar(1) : Scalar(n + 1);
  if (x == Scalar(-1)) {
    const Scalar sign = (n % 2 == 0) ? Scalar(1) : Scalar(-1);
    return kind == ChebKind::First ? sign : sign * Scalar(n + 1);
  }
  if (abs(x) < Scalar(1)) {
    // Work with |x| (theta in [0, pi/2]) and restore the parity (-1)^n; sin
    // theta is taken from x directly so U_n keeps relative accuracy near +-1.
    const Scalar parity = (x < 0 && n % 2 == 1) ? Scalar(-1) : Scalar(1);
    const Scalar ax = abs(x);
    const Scalar theta = std::acos(ax);
    if (kind == ChebKind::First) return parity * std::cos(Scalar(n) * theta);
    return parity * std::sin(Scalar(n + 1) * theta) / std::sqrt((Scalar(1) - ax) * (Scalar(1) + ax));
  }
  if (n <= detail::kRecurrenceLimit) return detail::cheb_recurrence(kind, n, x);

  const Scalar sign = (x < 0 && n % 2 == 1) ? Scalar(-1) : Scalar(1);
  const Scalar t = std::acosh(abs(x));
  if (kind == ChebKind::First) {
    // cosh(nt) = exp(nt) (1 + exp(-2nt)) / 2
    const Scalar lg = Scalar(n) * t + std::log1p(std::exp(Scalar(-2 * n) * t)) - std::log(Scalar(2));
    return sign * std::exp(lg);
  }
  // sinh((n+1)t)/sinh(t) = exp(nt) (1 - exp(-2(n+1)t)) / (1 - exp(-2t))
  const Scalar lg = Scalar(n) * t + std::log(-std::expm1(Scalar(-2 * (n + 1)) * t)) -
                    std::log(-std::expm1(Scalar(-2) * t));
  return sign * std::exp(lg);
}

/// The branch of z + sqrt(z^2 - 1) with modulus >= 1, i.e. sqrt(z^2-1)
/// taken as sqrt(z-1) sqrt(z+1) (cut on [-1,1], equal to 1 at z = sqrt 2).
template <typename Scalar>
Complex<Scalar> joukowski_inverse(const Complex<Scalar>& z) {
  Complex<Scalar> w = z + std::sqrt(z - Scalar(1)) * std::sqrt(z + Scalar(1));
  if (std::abs(w) < Scalar(1)) w = Scalar(1) / w;
  return w;
}

/// Complex evaluation of T_n(z) or U_n(z) via T_n = (w^n + w^-n)/2 and
/// U_n = (w^{n+1} - w^{-n-1}) / (w - 1/w), w = joukowski_inverse(z).
/// Real arguments are routed to the real evaluator.
template <typename Scalar>
Complex<Scalar> eval_cheb(ChebKind kind, int n, const Complex<Scalar>& z) {
  if (n < 0) throw DomainError("eval_cheb: negative degree");
  detail::require_finite(z, "eval_cheb");
  if (z.imag() == Scalar(0)) return Complex<Scalar>(eval_cheb(kind, n, z.real()), Scalar(0));

  const Complex<Scalar> w = joukowski_inverse(z);
  const Complex<Scalar> gap = w - Scalar(1) / w;
  // Near the foci w ~ +-1 and the U_n quotient is 0/0; the recurrence is
  // well conditioned there.
  if (std::abs(gap) < Scalar(1e-3)) return detail::cheb_recurrence(kind, n, z);

  const Complex<Scalar> lw = std::log(w);
  if (kind == ChebKind::First)
    return Scalar(0.5) * (std::exp(Scalar(n) * lw) + std::exp(-Scalar(n) * lw));
  return (std::exp(Scalar(n + 1) * lw) - std::exp(-Scalar(n + 1) * lw)) / gap;
}

/// log T_n(x) for x > 1, finite for any n.
template <typename Scalar>
Scalar log_cheb_t(int n, Scalar x) {
  if (!(x > Scalar(1))) throw DomainError("log_cheb_t: requires x > 1");
  const Scalar t = std::acosh(x);
  return Scalar(n) * t + std::log1p(std::exp(Scalar(-2 * n) * t)) - std::log(Scalar(2));
}

/// Joukowski map (w + 1/w)/2.
template <typename Scalar>
Complex<Scalar> joukowski(const Complex<Scalar>& w) {
  detail::require_finite(w, "joukowski");
  if (w == Complex<Scalar>(0)) throw DomainError("joukowski: w = 0");
  return Scalar(0.5) * (w + Scalar(1) / w);
}

/// All n solutions of T_n(x) = c in (-1,1), |c| < 1, sorted ascending.
/// Roots are cos(theta_j) with theta_j = (acos c + pi j)/n for even j and
/// (pi (j+1) - acos c)/n for odd j, which enumerates (0, pi) exactly once.
template <typename Scalar>
std::vector<Scalar> solve_t_equals(int n, Scalar c) {
  if (n < 1) throw DomainError("solve_t_equals: degree must be positive");
  if (!(std::abs(c) < Scalar(1))) throw DomainError("solve_t_equals: requires |c| < 1");
  const Scalar pi = std::numbers::pi_v<Scalar>;
  const Scalar alpha = std::acos(c);
  std::vector<Scalar> roots(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    const Scalar theta = (j % 2 == 0) ? (alpha + pi * Scalar(j)) / Scalar(n)
                                      : (pi * Scalar(j + 1) - alpha) / Scalar(n);
    roots[static_cast<std::size_t>(j)] = std::cos(theta);
  }
  std::sort(roots.begin(), roots.end());
  return roots;
}

enum class EllipseLocation { Inside, On, Outside };

template <typename Scalar>
struct EllipseMembership {
  EllipseLocation location;
  Scalar residual; // re^2/p^2 + im^2/(p^2-1) - 1
};

/// Bernstein ellipse with foci +-1, semi-major axis p > 1 and semi-minor axis
/// sqrt(p^2 - 1).
template <typename Scalar = double>
class EllipseParam {
public:
  explicit EllipseParam(Scalar p) : p_(p) {
    if (!(p > Scalar(1)) || !std::isfinite(p)) throw DomainError("EllipseParam: requires p > 1");
  }

  /// Ellipse traced by joukowski(r e^{it}), r > 1.
  static EllipseParam from_radius(Scalar r) {
    if (!(r > Scalar(1))) throw DomainError("EllipseParam::from_radius: requires r > 1");
    return EllipseParam(Scalar(0.5) * (r + Scalar(1) / r));
  }

  Scalar p() const { return p_; }
  Scalar semi_major() const { return p_; }
  Scalar semi_minor() const { return std::sqrt((p_ - Scalar(1)) * (p_ + Scalar(1))); }
  /// r = p + sqrt(p^2 - 1), the modulus of the preimage circle.
  Scalar radius() const { return p_ + semi_minor(); }

  Complex<Scalar> point(Scalar t) const {
    return {p_ * std::cos(t), semi_minor() * std::sin(t)};
  }

  Scalar residual(const Complex<Scalar>& z) const {
    const Scalar b2 = (p_ - Scalar(1)) * (p_ + Scalar(1));
    return z.real() * z.real() / (p_ * p_) + z.imag() * z.imag() / b2 - Scalar(1);
  }

  EllipseMembership<Scalar> classify(const Complex<Scalar>& z, Scalar on_tol = Scalar(1e-12)) const {
    detail::require_finite(z, "EllipseParam::classify");
    const Scalar r = residual(z);
    if (std::abs(r) <= on_tol) return {EllipseLocation::On, r};
    return {r < 0 ? EllipseLocation::Inside : EllipseLocation::Outside, r};
  }

private:
  Scalar p_;
};

template <typename Scalar>
EllipseMembership<Scalar> ellipse_classify(const EllipseParam<Scalar>& e, const Complex<Scalar>& z,
                                           Scalar on_tol = Scalar(1e-12)) {
  return e.classify(z, on_tol);
}

inline const char* to_string(EllipseLocation loc) {
  switch (loc) {
  case EllipseLocation::Inside: return "inside";
  case EllipseLocation::On: return "on";
  case EllipseLocation::Outside: return "outside";
  }
  return "?";
}

} // namespace simplefrac

#endif
