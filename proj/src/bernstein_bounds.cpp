#include "simplefrac/bernstein_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "simplefrac/cheb_core.hpp"
#include "simplefrac/errors.hpp"
#include "simplefrac/grid_search.hpp"

namespace simplefrac {

namespace {

constexpr double kRealTol = 1e-12;

bool is_real(const cplx& z) { return std::abs(z.imag()) <= kRealTol * std::max(1.0, std::abs(z)); }

// Pole multiset of P'/P: a together with the cofactor roots.
LogDerivative root_set(double a, const std::vector<cplx>& cofactor) {
  std::vector<cplx> all{cplx(a, 0.0)};
  for (const cplx& z : cofactor) all.push_back(is_real(z) ? cplx(z.real(), 0.0) : z);
  try {
    return LogDerivative(all, 1e-10);
  } catch (const ConstructionError& e) {
    throw DomainError(std::string("RootedPolynomial: ") + e.what());
  }
}

} // namespace

RootedPolynomial::RootedPolynomial(double a, std::vector<cplx> cofactor_roots, double lead)
    : a_(a), cofactor_(std::move(cofactor_roots)), lead_(lead) {
  if (!std::isfinite(a) || !(a > 1.0)) throw DomainError("RootedPolynomial: distinguished root must satisfy a > 1");
  if (!std::isfinite(lead) || lead == 0.0) throw DomainError("RootedPolynomial: leading coefficient must be nonzero");
  for (cplx& z : cofactor_) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) throw DomainError("RootedPolynomial: non-finite root");
    if (is_real(z)) {
      z = cplx(z.real(), 0.0);
      if (std::abs(z.real()) <= 1.0) throw DomainError("RootedPolynomial: cofactor root on [-1,1]");
    }
  }
  root_set(a_, cofactor_); // conjugate closure
}

RootedPolynomial RootedPolynomial::with_generator(ChebSeries<double> g) const {
  if (g.degree() != n()) throw DomainError("RootedPolynomial::with_generator: degree mismatch");
  RootedPolynomial out = *this;
  out.generator_ = std::move(g);
  return out;
}

double RootedPolynomial::value(double x) const {
  if (generator_) return (*generator_)(x);
  double v = lead_ * (x - a_);
  for (const cplx& z : cofactor_) {
    if (z.imag() == 0.0)
      v *= x - z.real();
    else if (z.imag() > 0.0)
      v *= std::norm(x - z);
  }
  return v;
}

double RootedPolynomial::derivative(double x) const {
  if (generator_) return generator_->derivative()(x);
  double s = 1.0 / (x - a_);
  for (const cplx& z : cofactor_) s += std::real(1.0 / (x - z));
  return value(x) * s;
}

RootedPolynomial chebyshev_witness(int n, double a) {
  if (n < 1) throw DomainError("chebyshev_witness: n must be positive");
  const LogDerivative rho = build_extremal_weighted({n, a}, RangePolicy::Permissive);
  std::vector<cplx> cof;
  bool skipped = false;
  for (const cplx& z : rho.poles()) {
    if (!skipped && z.imag() == 0.0 && z.real() == a) {
      skipped = true;
      continue;
    }
    cof.push_back(z);
  }
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[0] = -eval_cheb(ChebKind::First, n, a);
  c[static_cast<std::size_t>(n)] += 1.0;
  ChebSeries<double> g(std::move(c));
  const double lead = g.monomial_leading();
  return RootedPolynomial(a, std::move(cof), lead).with_generator(std::move(g));
}

RootedPolynomial antiderivative_witness(int n, double a) {
  const FixedPoleClass cls(n, a);
  const LogDerivative rho = build_candidate_unweighted(cls);
  std::vector<cplx> cof;
  bool skipped = false;
  for (const cplx& z : rho.poles()) {
    if (!skipped && z.imag() == 0.0 && z.real() == a) {
      skipped = true;
      continue;
    }
    cof.push_back(z);
  }
  ChebSeries<double> g = candidate_generator(cls);
  const double lead = g.monomial_leading();
  return RootedPolynomial(a, std::move(cof), lead).with_generator(std::move(g));
}

double corollary_threshold(int n) { return unweighted_theorem_threshold(n); }

CorollaryCheck check_corollary(const RootedPolynomial& p, RangePolicy policy, double tol) {
  const int n = p.n();
  const double a = p.a();
  if (policy == RangePolicy::Strict && (n < 4 || !(a > corollary_threshold(n))))
    throw OutOfTheoremRange("check_corollary: requires n >= 4 and a > sqrt(2) (3 sqrt n)^(1/n), got n = " +
                            std::to_string(n) + ", a = " + std::to_string(a));
  if (!(a > std::numbers::sqrt2)) throw OutOfTheoremRange("check_corollary: requires a > sqrt(2)");

  const int grid = std::max(2001, 40 * n);
  CorollaryCheck out;
  out.lhs_w = grid_maximize([&](double x) { return weight_value(Weight::Chebyshev, x) * std::abs(p.derivative(x)); },
                            grid, tol)
                  .value;
  out.lhs_u = grid_maximize([&](double x) { return std::abs(p.derivative(x)); }, grid, tol).value;
  const Extremum m = grid_maximize([&](double x) { return -std::abs(p.value(x)); }, grid, tol);
  out.min_abs = -m.value;
  out.min_location = m.location;

  out.rhs_w = n * out.min_abs / std::sinh(n * std::acosh(a));
  const double tn = eval_cheb(ChebKind::First, n, a);
  const double tn2 = eval_cheb(ChebKind::First, std::abs(n - 2), a);
  out.rhs_u = 2.0 * n * out.min_abs / (tn - tn2 + 3.0);
  out.holds_w = out.lhs_w >= out.rhs_w;
  out.holds_u = out.lhs_u >= out.rhs_u;
  out.both_hold = out.holds_w && out.holds_u;
  return out;
}

AsymptoticRatios asymptotic_ratios(int n, double a, RangePolicy policy) {
  if (policy == RangePolicy::Strict && (n < 4 || !(a > corollary_threshold(n))))
    throw OutOfTheoremRange("asymptotic_ratios: requires n >= 4 and a > sqrt(2) (3 sqrt n)^(1/n)");
  if (n < 1 || !(a > 1.0)) throw DomainError("asymptotic_ratios: requires n >= 1 and a > 1");

  // Everything in terms of 1/T_n(a) and T_{n-2}(a)/T_n(a), which stay finite
  // after T_n(a) itself overflows.
  const double log_tn = log_cheb_t(n, a);
  const double inv_tn = std::exp(-log_tn);
  AsymptoticRatios out;
  out.r1 = std::sqrt(1.0 - 2.0 * inv_tn / (1.0 + inv_tn));
  if (n >= 3) {
    const double q = std::exp(log_cheb_t(n - 2, a) - log_tn);
    out.r2_lower = 1.0 - 2.0 * (q / (n - 2) - 3.0 * inv_tn) / (1.0 - q + 3.0 * inv_tn);
  }
  return out;
}

RootedPolynomial random_admissible(int n, double a, std::mt19937_64& rng, double min_ellipse, double max_ellipse) {
  if (n < 1) throw DomainError("random_admissible: n must be positive");
  if (!(min_ellipse > 1.0) || !(max_ellipse > min_ellipse))
    throw DomainError("random_admissible: requires 1 < min_ellipse < max_ellipse");
  const auto radius = [](double p) { return p + std::sqrt((p - 1.0) * (p + 1.0)); };
  // Strictly outside E_{min_ellipse}.
  std::uniform_real_distribution<double> rad(std::nextafter(radius(min_ellipse), INFINITY), radius(max_ellipse));
  std::uniform_real_distribution<double> ang(0.05, std::numbers::pi - 0.05);
  std::uniform_int_distribution<int> npairs(0, (n - 1) / 2);
  std::bernoulli_distribution coin(0.5);

  const int pairs = npairs(rng);
  std::vector<cplx> cof;
  for (int k = 0; k < n - 1 - 2 * pairs; ++k) {
    const double x = joukowski(cplx(rad(rng), 0.0)).real();
    cof.emplace_back(coin(rng) ? x : -x, 0.0);
  }
  for (int k = 0; k < pairs; ++k) {
    const cplx z = joukowski(std::polar(rad(rng), ang(rng)));
    cof.push_back(z);
    cof.push_back(std::conj(z));
  }
  return RootedPolynomial(a, std::move(cof));
}

} // namespace simplefrac
