#include "simplefrac/log_derivative.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "simplefrac/errors.hpp"

namespace simplefrac {

namespace detail {

double pairwise_sum(std::span<const double> terms) {
  if (terms.size() <= 8) {
    double s = 0.0;
    for (double t : terms) s += t;
    return s;
  }
  const std::size_t half = terms.size() / 2;
  return pairwise_sum(terms.first(half)) + pairwise_sum(terms.subspan(half));
}

} // namespace detail

LogDerivative::LogDerivative(std::span<const cplx> poles, double conj_tol) {
  if (poles.empty()) throw ConstructionError("LogDerivative: at least one pole required");
  std::vector<cplx> upper;
  std::vector<cplx> lower;
  for (const cplx& z : poles) {
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw ConstructionError("LogDerivative: non-finite pole");
    const double scale = std::max(1.0, std::abs(z));
    if (std::abs(z.imag()) <= conj_tol * scale)
      real_.push_back(z.real());
    else if (z.imag() > 0)
      upper.push_back(z);
    else
      lower.push_back(z);
  }
  if (upper.size() != lower.size())
    throw ConstructionError("LogDerivative: pole multiset is not closed under conjugation");

  std::vector<bool> used(lower.size(), false);
  for (const cplx& z : upper) {
    std::size_t best = lower.size();
    double best_dist = std::numeric_limits<double>::infinity();
    for (std::size_t j = 0; j < lower.size(); ++j) {
      if (used[j]) continue;
      const double d = std::abs(std::conj(lower[j]) - z);
      if (d < best_dist) {
        best_dist = d;
        best = j;
      }
    }
    if (best == lower.size() || best_dist > conj_tol * std::max(1.0, std::abs(z)))
      throw ConstructionError("LogDerivative: pole multiset is not closed under conjugation");
    used[best] = true;
    pairs_.push_back(0.5 * (z + std::conj(lower[best])));
  }
  std::sort(real_.begin(), real_.end());
  std::sort(pairs_.begin(), pairs_.end(), [](const cplx& a, const cplx& b) {
    return a.real() != b.real() ? a.real() < b.real() : a.imag() < b.imag();
  });
}

LogDerivative LogDerivative::from_parts(std::vector<double> real_poles, std::vector<cplx> upper_poles) {
  LogDerivative rho;
  for (const cplx& z : upper_poles)
    if (!(z.imag() > 0.0)) throw ConstructionError("LogDerivative::from_parts: pair representative needs Im > 0");
  rho.real_ = std::move(real_poles);
  rho.pairs_ = std::move(upper_poles);
  if (rho.degree() == 0) throw ConstructionError("LogDerivative: at least one pole required");
  std::sort(rho.real_.begin(), rho.real_.end());
  return rho;
}

LogDerivative LogDerivative::with_generator(ChebSeries<double> p) const {
  if (p.degree() != degree()) throw ConstructionError("LogDerivative::with_generator: degree mismatch");
  LogDerivative out = *this;
  out.generator_prime_ = p.derivative();
  out.generator_ = std::move(p);
  return out;
}

LogDerivative LogDerivative::without_generator() const {
  LogDerivative out = *this;
  out.generator_.reset();
  out.generator_prime_.reset();
  return out;
}

std::vector<cplx> LogDerivative::poles() const {
  std::vector<cplx> out;
  out.reserve(static_cast<std::size_t>(degree()));
  for (double r : real_) out.emplace_back(r, 0.0);
  for (const cplx& z : pairs_) {
    out.push_back(z);
    out.push_back(std::conj(z));
  }
  return out;
}

double LogDerivative::distance_to_poles(double x) const {
  double d = std::numeric_limits<double>::infinity();
  for (double r : real_) d = std::min(d, std::abs(x - r));
  for (const cplx& z : pairs_) d = std::min(d, std::abs(x - z));
  return d;
}

double LogDerivative::min_modulus() const {
  double m = std::numeric_limits<double>::infinity();
  for (double r : real_) m = std::min(m, std::abs(r));
  for (const cplx& z : pairs_) m = std::min(m, std::abs(z));
  return m;
}

double LogDerivative::min_pairwise_separation() const {
  const auto all = poles();
  double m = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < all.size(); ++i)
    for (std::size_t j = i + 1; j < all.size(); ++j) m = std::min(m, std::abs(all[i] - all[j]));
  return m;
}

bool LogDerivative::has_pole_on_segment() const {
  return std::any_of(real_.begin(), real_.end(), [](double r) { return std::abs(r) <= 1.0; });
}

double eval_pole_sum(const LogDerivative& rho, double x, double pole_tol) {
  if (rho.distance_to_poles(x) <= pole_tol) throw EvaluationError("eval_ld: argument coincides with a pole");
  std::vector<double> terms;
  terms.reserve(rho.real_poles().size() + rho.pair_poles().size());
  for (double r : rho.real_poles()) terms.push_back(1.0 / (x - r));
  for (const cplx& z : rho.pair_poles()) terms.push_back(2.0 * (x - z.real()) / std::norm(x - z));
  return detail::pairwise_sum(terms);
}

double eval_ld(const LogDerivative& rho, double x, double pole_tol) {
  if (!rho.generator()) return eval_pole_sum(rho, x, pole_tol);
  if (rho.distance_to_poles(x) <= pole_tol) throw EvaluationError("eval_ld: argument coincides with a pole");
  return (*rho.generator_derivative())(x) / (*rho.generator())(x);
}

double eval_ld_derivative(const LogDerivative& rho, double x) {
  std::vector<double> terms;
  for (double r : rho.real_poles()) terms.push_back(-1.0 / ((x - r) * (x - r)));
  for (const cplx& z : rho.pair_poles()) {
    const cplx inv = 1.0 / (x - z);
    terms.push_back(-2.0 * (inv * inv).real());
  }
  return detail::pairwise_sum(terms);
}

} // namespace simplefrac
