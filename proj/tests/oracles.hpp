#ifndef SIMPLEFRAC_TESTS_ORACLES_HPP
#define SIMPLEFRAC_TESTS_ORACLES_HPP

// Independent reference computations used only by tests. Nothing here calls
// into the library's evaluation paths.

#include <algorithm>
#include <cmath>
#include <complex>
#include <functional>
#include <numeric>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

/// Monomial coefficients of T_n (ascending powers), built from
/// T_{k+1} = 2x T_k - T_{k-1} on integer coefficient vectors.
inline std::vector<long double> cheb_t_monomial(int n) {
  std::vector<long double> prev{1.0L};
  if (n == 0) return prev;
  std::vector<long double> cur{0.0L, 1.0L};
  for (int k = 1; k < n; ++k) {
    std::vector<long double> next(cur.size() + 1, 0.0L);
    for (std::size_t i = 0; i < cur.size(); ++i) next[i + 1] += 2.0L * cur[i];
    for (std::size_t i = 0; i < prev.size(); ++i) next[i] -= prev[i];
    prev = cur;
    cur = next;
  }
  return cur;
}

template <typename T>
T horner(const std::vector<long double>& coeffs, T x) {
  T acc(0);
  for (std::size_t i = coeffs.size(); i-- > 0;) acc = acc * x + T(coeffs[i]);
  return acc;
}

/// Real monomial coefficients (ascending) of lead * prod (x - r) over a
/// conjugate-closed root list, expanded in complex long double.
inline std::vector<long double> poly_from_roots(const std::vector<std::complex<double>>& roots, double lead = 1.0) {
  std::vector<std::complex<long double>> c{1.0L};
  for (const auto& r : roots) {
    std::vector<std::complex<long double>> next(c.size() + 1);
    const std::complex<long double> rl(r.real(), r.imag());
    for (std::size_t i = 0; i < c.size(); ++i) {
      next[i + 1] += c[i];
      next[i] -= rl * c[i];
    }
    c = next;
  }
  std::vector<long double> out;
  for (const auto& v : c) out.push_back(static_cast<long double>(lead) * v.real());
  return out;
}

inline std::vector<long double> poly_derivative(const std::vector<long double>& c) {
  std::vector<long double> d;
  for (std::size_t i = 1; i < c.size(); ++i) d.push_back(static_cast<long double>(i) * c[i]);
  if (d.empty()) d.push_back(0.0L);
  return d;
}

/// Long-double forward recurrence for T_n (first = true) or U_n.
inline long double cheb_recurrence_ld(bool first, int n, long double x) {
  long double prev = 1.0L;
  if (n == 0) return prev;
  long double cur = first ? x : 2.0L * x;
  for (int k = 1; k < n; ++k) {
    const long double next = 2.0L * x * cur - prev;
    prev = cur;
    cur = next;
  }
  return cur;
}

/// Plain bisection for a sign change of g on [lo, hi].
inline double bisect(const std::function<double(double)>& g, double lo, double hi, int iters = 200) {
  double glo = g(lo);
  for (int i = 0; i < iters; ++i) {
    const double mid = 0.5 * (lo + hi);
    const double gm = g(mid);
    if ((gm > 0) == (glo > 0)) {
      lo = mid;
      glo = gm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

/// Brute-force maximum of g over a uniform grid on [lo, hi].
inline std::pair<double, double> grid_max(const std::function<double(double)>& g, double lo, double hi,
                                          int points = 200001) {
  double best = -INFINITY;
  double where = lo;
  for (int i = 0; i < points; ++i) {
    const double x = lo + (hi - lo) * i / (points - 1);
    const double v = g(x);
    if (v > best) {
      best = v;
      where = x;
    }
  }
  return {best, where};
}

/// Permanent by the defining sum over all permutations.
inline std::complex<double> permanent_naive(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::complex<double> total(0.0);
  do {
    std::complex<double> prod(1.0);
    for (int i = 0; i < n; ++i) prod *= m(i, perm[static_cast<std::size_t>(i)]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

/// Determinant by the Leibniz formula (small n only).
inline std::complex<double> det_leibniz(const Eigen::MatrixXcd& m) {
  const int n = static_cast<int>(m.rows());
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  std::complex<double> total(0.0);
  do {
    int inversions = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j)
        if (perm[static_cast<std::size_t>(i)] > perm[static_cast<std::size_t>(j)]) ++inversions;
    std::complex<double> prod(inversions % 2 == 0 ? 1.0 : -1.0);
    for (int i = 0; i < n; ++i) prod *= m(i, perm[static_cast<std::size_t>(i)]);
    total += prod;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return total;
}

inline double rel_diff(double a, double b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

inline double rel_diff(std::complex<double> a, std::complex<double> b) {
  const double s = std::max(std::abs(a), std::abs(b));
  return s == 0.0 ? 0.0 : std::abs(a - b) / s;
}

} // namespace oracle

#endif
