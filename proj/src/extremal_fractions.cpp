#include "simplefrac/extremal_fractions.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "simplefrac/cheb_core.hpp"
#include "simplefrac/errors.hpp"

namespace simplefrac {

FixedPoleClass::FixedPoleClass(int n_, double a_) : n(n_), a(a_) {
  if (n < 1) throw DomainError("FixedPoleClass: degree must be positive");
  if (!(a > 1.0) || !std::isfinite(a)) throw DomainError("FixedPoleClass: fixed pole requires a > 1");
}

double weighted_theorem_threshold() { return std::numbers::sqrt2; }

double unweighted_theorem_threshold(int n) {
  return std::numbers::sqrt2 * std::pow(3.0 * std::sqrt(static_cast<double>(n)), 1.0 / n);
}

double inner_ellipse_parameter(int n, double a) {
  return a * std::pow(3.0 * std::sqrt(static_cast<double>(n)), -1.0 / n);
}

double weighted_value(const LogDerivative& rho, Weight w, double x) {
  const double wx = weight_value(w, x);
  if (wx == 0.0) return 0.0;
  return wx * eval_ld(rho, x);
}

LogDerivative build_extremal_weighted(const FixedPoleClass& cls, RangePolicy policy) {
  const int n = cls.n;
  const double a = cls.a;
  if (policy == RangePolicy::Strict && !(a > weighted_theorem_threshold()))
    throw OutOfTheoremRange("build_extremal_weighted: optimality requires a > sqrt(2), got a = " +
                            std::to_string(a));
  const double b = std::sqrt((a - 1.0) * (a + 1.0));
  std::vector<double> reals{a};
  if (n % 2 == 0) reals.push_back(-a);
  std::vector<cplx> pairs;
  for (int j = 1; 2 * j < n; ++j) {
    const double phi = 2.0 * std::numbers::pi * j / n;
    pairs.emplace_back(a * std::cos(phi), b * std::sin(phi));
  }
  LogDerivative rho = LogDerivative::from_parts(std::move(reals), std::move(pairs));

  // Generator (T_n - T_n(a)) / T_n(a); skipped once T_n(a) overflows, where
  // the pole sum is the only option left.
  const double tna = eval_cheb(ChebKind::First, n, a);
  if (!std::isfinite(tna)) return rho;
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[0] = -1.0;
  c[static_cast<std::size_t>(n)] += 1.0 / tna;
  return rho.with_generator(ChebSeries<double>(std::move(c)));
}

double extremal_weighted_norm(const FixedPoleClass& cls) {
  return cls.n / std::sinh(cls.n * std::acosh(cls.a));
}

WeightedAlternance alternance_points_weighted(const FixedPoleClass& cls) {
  const int n = cls.n;
  const LogDerivative rho = build_extremal_weighted(cls, RangePolicy::Permissive);
  const double tna = eval_cheb(ChebKind::First, n, cls.a);
  const double level = extremal_weighted_norm(cls);

  WeightedAlternance out;
  auto& rep = out.alternance;
  rep.points = solve_t_equals(n, 1.0 / tna);
  rep.level = level;
  rep.tolerance = 1e-10;
  bool ok = true;
  for (std::size_t k = 0; k < rep.points.size(); ++k) {
    const double v = weighted_value(rho, Weight::Chebyshev, rep.points[k]);
    rep.values.push_back(v);
    if (std::abs(std::abs(v) - level) > rep.tolerance * level) ok = false;
    if (k > 0 && (v > 0) == (rep.values[k - 1] > 0)) ok = false;
  }
  rep.sign_pattern_ok = ok;
  for (int k = 0; k <= n; ++k) out.zeros.push_back(std::cos(std::numbers::pi * (n - k) / n));
  out.zeros.front() = -1.0;
  out.zeros.back() = 1.0;
  return out;
}

ChebSeries<double> candidate_generator(const FixedPoleClass& cls) {
  const int n = cls.n;
  if (n < 3) throw DomainError("candidate_generator: requires n >= 3");
  const double fa = eval_cheb(ChebKind::First, n, cls.a) / n - eval_cheb(ChebKind::First, n - 2, cls.a) / (n - 2);
  std::vector<double> c(static_cast<std::size_t>(n) + 1, 0.0);
  c[static_cast<std::size_t>(n)] = 0.5 / n;
  c[static_cast<std::size_t>(n - 2)] -= 0.5 / (n - 2);
  c[0] -= 0.5 * fa;
  return ChebSeries<double>(std::move(c));
}

LogDerivative build_candidate_unweighted(const FixedPoleClass& cls, const Tolerances& tol) {
  const int n = cls.n;
  const double a = cls.a;
  if (n < 4 || !(a > 1.0 + 1.0 / n))
    throw OutOfTheoremRange("build_candidate_unweighted: requires n >= 4 and a > 1 + 1/n");

  // The roots lie near joukowski(R e^{2 pi i j/n}) with R^n = 2n f(a), the
  // balance of the dominant terms T_n/n and f(a); refined simultaneously.
  const ChebSeries<double> q = candidate_generator(cls);
  const double fa = eval_cheb(ChebKind::First, n, a) / n - eval_cheb(ChebKind::First, n - 2, a) / (n - 2);
  const double radius = std::exp((std::log(2.0 * n) + std::log(fa)) / n);
  std::vector<cplx> guesses;
  for (int j = 0; j < n; ++j) guesses.push_back(joukowski(std::polar(radius, 2.0 * std::numbers::pi * j / n)));
  std::vector<cplx> roots = q.refine_roots_aberth(std::move(guesses));

  constexpr double kRealSnap = 1e-8;
  std::size_t nearest = roots.size();
  double nearest_dist = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < roots.size(); ++k) {
    if (std::abs(roots[k].imag()) <= kRealSnap * std::max(1.0, std::abs(roots[k])))
      roots[k] = cplx(roots[k].real(), 0.0);
    const double d = std::abs(roots[k] - a);
    if (d < nearest_dist) {
      nearest_dist = d;
      nearest = k;
    }
  }
  if (nearest == roots.size() || nearest_dist > kRealSnap * a)
    throw EvaluationError("build_candidate_unweighted: fixed pole a not recovered among the roots");
  roots[nearest] = cplx(a, 0.0);

  for (const cplx& z : roots) {
    const double ratio = q.newton_ratio(z);
    if (!(ratio <= tol.root_residual))
      throw ToleranceNotMet("build_candidate_unweighted: root residual gate failed", ratio, z.real());
  }
  LogDerivative rho(roots, 1e-10);
  return rho.with_generator(q);
}

LambdaBounds lambda_bounds(const FixedPoleClass& cls) {
  const int n = cls.n;
  if (n < 4 || !(cls.a > 1.0 + 1.0 / n)) throw OutOfTheoremRange("lambda_bounds: requires n >= 4 and a > 1 + 1/n");
  const double base = eval_cheb(ChebKind::First, n, cls.a) -
                      static_cast<double>(n) / (n - 2) * eval_cheb(ChebKind::First, n - 2, cls.a);
  const double shift = 2.0 * (n - 1) / (n - 2);
  const double lo_den = base + shift;
  const double hi_den = base - shift;
  if (!(hi_den > 0.0)) throw DomainError("lambda_bounds: non-positive denominator");
  return {2.0 * n / lo_den, 2.0 * n / hi_den};
}

PoleAnnulusReport verify_pole_annulus(const FixedPoleClass& cls, const LogDerivative& candidate, double on_tol) {
  PoleAnnulusReport rep;
  const EllipseParam<double> ea(cls.a);
  rep.t = inner_ellipse_parameter(cls.n, cls.a);
  const auto poles = candidate.poles();
  rep.all_in_closure_ea = true;
  for (const cplx& z : poles) {
    const double r = ea.residual(z);
    rep.residuals_ea.push_back(r);
    if (r > on_tol) rep.all_in_closure_ea = false;
  }
  if (rep.t > 1.0) {
    const EllipseParam<double> et(rep.t);
    bool outside = true;
    for (const cplx& z : poles) {
      const double r = et.residual(z);
      rep.residuals_et.push_back(r);
      if (!(r > on_tol)) outside = false;
    }
    rep.all_outside_et = outside;
  }
  rep.min_modulus = candidate.min_modulus();
  rep.all_outside_unit_disk = rep.min_modulus > 1.0;
  return rep;
}

namespace {

NormEstimate sup_norm_impl(const LogDerivative& rho, Weight w, double tol, int grid_per_degree) {
  if (rho.has_pole_on_segment()) throw DomainError("sup_norm: pole on [-1,1]");
  if (!(tol > 0.0)) throw DomainError("sup_norm: tolerance must be positive");
  const int grid = std::max(61, grid_per_degree * rho.degree());
  const auto g = [&](double x) { return std::abs(weighted_value(rho, w, x)); };
  const Extremum e = grid_maximize(g, grid, tol);
  return {e.value, e.location, w == Weight::Chebyshev, tol};
}

} // namespace

NormEstimate weighted_sup_norm(const LogDerivative& rho, double tol, int grid_per_degree) {
  return sup_norm_impl(rho, Weight::Chebyshev, tol, grid_per_degree);
}

NormEstimate sup_norm(const LogDerivative& rho, double tol, int grid_per_degree) {
  return sup_norm_impl(rho, Weight::None, tol, grid_per_degree);
}

NormEstimate sup_norm_on_interval(const LogDerivative& rho, double lo, double hi, double tol, int grid_per_degree) {
  if (!(hi > lo)) throw DomainError("sup_norm_on_interval: empty interval");
  for (double r : rho.real_poles())
    if (r >= lo && r <= hi) throw DomainError("sup_norm_on_interval: pole on the interval");
  const int grid = std::max(61, grid_per_degree * rho.degree());
  const auto g = [&](double x) { return std::abs(eval_ld(rho, x)); };
  const Extremum e = grid_maximize(g, grid, tol, lo, hi);
  return {e.value, e.location, false, tol};
}

LogDerivative affine_pullback(const LogDerivative& rho, double mu, double nu) {
  if (!(mu > 0.0)) throw DomainError("affine_pullback: requires mu > 0");
  std::vector<double> reals;
  for (double r : rho.real_poles()) reals.push_back((r - nu) / mu);
  std::vector<cplx> pairs;
  for (const cplx& z : rho.pair_poles()) pairs.push_back((z - nu) / mu);
  return LogDerivative::from_parts(std::move(reals), std::move(pairs));
}

DvpBracket dvp_bracket(const FixedPoleClass& cls, const Tolerances& tol) {
  const int n = cls.n;
  if (n < 4 || !(cls.a > unweighted_theorem_threshold(n)))
    throw OutOfTheoremRange("dvp_bracket: requires n >= 4 and a > sqrt(2) (3 sqrt n)^(1/n)");
  const LogDerivative cand = build_candidate_unweighted(cls, tol);

  DvpBracket br;
  br.annulus = verify_pole_annulus(cls, cand, 1e-10);
  if (!br.annulus.all_outside_unit_disk) throw OutOfTheoremRange("dvp_bracket: candidate has a pole with |z| <= 1");
  if (!(cand.min_pairwise_separation() > tol.pole_separation))
    throw OutOfTheoremRange("dvp_bracket: candidate poles are not pairwise distinct");

  br.lower = std::numeric_limits<double>::infinity();
  br.alternates = true;
  for (int k = 0; k < n; ++k) {
    const double x = (k == 0) ? -1.0 : (k == n - 1) ? 1.0 : std::cos(std::numbers::pi * (n - 1 - k) / (n - 1));
    const double v = eval_ld(cand, x);
    if (!br.values.empty() && (v > 0) == (br.values.back() > 0)) br.alternates = false;
    br.points.push_back(x);
    br.values.push_back(v);
    br.lower = std::min(br.lower, std::abs(v));
  }
  br.upper = sup_norm(cand, tol.sup_refine, tol.grid_per_degree).value;
  br.ratio = br.upper * (eval_cheb(ChebKind::First, n, cls.a) - eval_cheb(ChebKind::First, n - 2, cls.a)) / (2.0 * n);
  return br;
}

} // namespace simplefrac
