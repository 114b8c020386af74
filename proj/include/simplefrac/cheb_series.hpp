#ifndef SIMPLEFRAC_CHEB_SERIES_HPP
#define SIMPLEFRAC_CHEB_SERIES_HPP

#include <cmath>
#include <complex>
#include <limits>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "simplefrac/cheb_core.hpp"
#include "simplefrac/errors.hpp"

namespace simplefrac {

/// Finite Chebyshev series sum_k c_k T_k(x), evaluated by Clenshaw.
template <typename Scalar = double>
class ChebSeries {
public:
  ChebSeries() : coeffs_{Scalar(0)} {}

  explicit ChebSeries(std::vector<Scalar> coeffs) : coeffs_(std::move(coeffs)) {
    while (coeffs_.size() > 1 && coeffs_.back() == Scalar(0)) coeffs_.pop_back();
    if (coeffs_.empty()) coeffs_.push_back(Scalar(0));
  }

  /// c_0 T_0 + ... with a single nonzero coefficient at `degree`.
  static ChebSeries basis(int degree, Scalar scale = Scalar(1)) {
    std::vector<Scalar> c(static_cast<std::size_t>(degree) + 1, Scalar(0));
    c.back() = scale;
    return ChebSeries(std::move(c));
  }

  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  const std::vector<Scalar>& coeffs() const { return coeffs_; }

  template <typename T>
  T evaluate(const T& x) const {
    T b1(0), b2(0);
    for (std::size_t k = coeffs_.size(); k-- > 1;) {
      T b0 = T(coeffs_[k]) + T(2) * x * b1 - b2;
      b2 = b1;
      b1 = b0;
    }
    return T(coeffs_[0]) + x * b1 - b2;
  }

  Scalar operator()(Scalar x) const { return evaluate(x); }
  Complex<Scalar> operator()(const Complex<Scalar>& z) const { return evaluate(z); }

  ChebSeries derivative() const {
    const std::size_t n = coeffs_.size() - 1;
    if (n == 0) return ChebSeries();
    std::vector<Scalar> d(n + 2, Scalar(0));
    for (std::size_t k = n; k >= 1; --k) d[k - 1] = d[k + 1] + Scalar(2 * k) * coeffs_[k];
    d[0] /= Scalar(2);
    d.resize(n);
    return ChebSeries(std::move(d));
  }

  ChebSeries operator+(const ChebSeries& o) const {
    std::vector<Scalar> c(std::max(coeffs_.size(), o.coeffs_.size()), Scalar(0));
    for (std::size_t k = 0; k < coeffs_.size(); ++k) c[k] += coeffs_[k];
    for (std::size_t k = 0; k < o.coeffs_.size(); ++k) c[k] += o.coeffs_[k];
    return ChebSeries(std::move(c));
  }

  ChebSeries operator*(Scalar s) const {
    std::vector<Scalar> c = coeffs_;
    for (auto& v : c) v *= s;
    return ChebSeries(std::move(c));
  }

  /// Leading coefficient in the monomial basis: c_n 2^{n-1} (c_0 for n = 0).
  Scalar monomial_leading() const {
    const int n = degree();
    return n == 0 ? coeffs_[0] : std::ldexp(coeffs_.back(), n - 1);
  }

  /// Relative Newton step |p(z)| / (|p'(z)| max(1,|z|)) used as the root
  /// acceptance measure.
  Scalar newton_ratio(const Complex<Scalar>& z) const {
    const Complex<Scalar> v = evaluate(z);
    const Complex<Scalar> dv = derivative().evaluate(z);
    return std::abs(v) / (std::abs(dv) * std::max(Scalar(1), std::abs(z)));
  }

  /// All complex roots: eigenvalues of the colleague matrix, each polished
  /// by Newton iteration on the series itself.
  std::vector<Complex<Scalar>> roots(int polish_iterations = 8) const {
    const int n = degree();
    if (n < 1) throw DomainError("ChebSeries::roots: constant series");
    std::vector<Complex<Scalar>> out;
    if (n == 1) {
      out.emplace_back(-coeffs_[0] / coeffs_[1], Scalar(0));
      return out;
    }
    using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
    Matrix colleague = Matrix::Zero(n, n);
    colleague(0, 1) = Scalar(1);
    for (int k = 1; k < n - 1; ++k) {
      colleague(k, k - 1) = Scalar(0.5);
      colleague(k, k + 1) = Scalar(0.5);
    }
    colleague(n - 1, n - 2) += Scalar(0.5);
    for (int j = 0; j < n; ++j)
      colleague(n - 1, j) -= coeffs_[static_cast<std::size_t>(j)] / (Scalar(2) * coeffs_.back());

    Eigen::EigenSolver<Matrix> solver(colleague, false);
    if (solver.info() != Eigen::Success) throw EvaluationError("ChebSeries::roots: eigensolver failed");
    const ChebSeries d = derivative();
    for (int k = 0; k < n; ++k) {
      Complex<Scalar> z = solver.eigenvalues()(k);
      for (int it = 0; it < polish_iterations; ++it) {
        const Complex<Scalar> dv = d.evaluate(z);
        if (dv == Complex<Scalar>(0)) break;
        const Complex<Scalar> step = evaluate(z) / dv;
        const Complex<Scalar> next = z - step;
        if (!(std::abs(evaluate(next)) < std::abs(evaluate(z)))) break;
        z = next;
      }
      out.push_back(z);
    }
    return out;
  }

  /// Simultaneous Aberth-Ehrlich refinement of one approximation per root.
  /// Converges from rough but distinct starting points, which makes it the
  /// better tool when roots sit far outside [-1,1] and the colleague
  /// eigenvalues lose accuracy.
  std::vector<Complex<Scalar>> refine_roots_aberth(std::vector<Complex<Scalar>> z, int max_iter = 200) const {
    if (static_cast<int>(z.size()) != degree()) throw DomainError("ChebSeries::refine_roots_aberth: need degree() guesses");
    const ChebSeries d = derivative();
    const Scalar stop = Scalar(4) * std::numeric_limits<Scalar>::epsilon();
    for (int it = 0; it < max_iter; ++it) {
      Scalar biggest(0);
      for (std::size_t k = 0; k < z.size(); ++k) {
        const Complex<Scalar> dv = d.evaluate(z[k]);
        if (dv == Complex<Scalar>(0)) continue;
        const Complex<Scalar> ratio = evaluate(z[k]) / dv;
        Complex<Scalar> repulsion(0);
        for (std::size_t j = 0; j < z.size(); ++j)
          if (j != k) repulsion += Scalar(1) / (z[k] - z[j]);
        const Complex<Scalar> step = ratio / (Scalar(1) - ratio * repulsion);
        z[k] -= step;
        biggest = std::max(biggest, std::abs(step) / std::max(Scalar(1), std::abs(z[k])));
      }
      if (biggest <= stop) break;
    }
    return z;
  }

private:
  std::vector<Scalar> coeffs_;
};

} // namespace simplefrac

#endif
