#ifndef SIMPLEFRAC_CAUCHY_BORCHARDT_HPP
#define SIMPLEFRAC_CAUCHY_BORCHARDT_HPP

// Cauchy-type matrices B = (1/(c_j - z_k)), A = B o B, their determinants and
// permanents, Borchardt's identity det A = det B per B, and Komarov's
// decomposition of a difference of logarithmic derivatives.
//
// Complex arithmetic throughout, also for all-real data.

#include <algorithm>
#include <bit>
#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "simplefrac/errors.hpp"

namespace simplefrac {

template <typename Scalar>
using CMatrix = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, Eigen::Dynamic>;

/// Real nodes c_j and a conjugate-closed pole set z_k of the same size.
template <typename Scalar = double>
class CauchyPair {
public:
  using Complex = std::complex<Scalar>;

  CauchyPair(std::vector<Scalar> nodes, std::vector<Complex> poles, Scalar conj_tol = Scalar(1e-12))
      : nodes_(std::move(nodes)), poles_(std::move(poles)) {
    if (nodes_.empty()) throw ConstructionError("CauchyPair: empty node set");
    if (nodes_.size() != poles_.size()) throw ConstructionError("CauchyPair: |c| != |z|");
    for (std::size_t i = 0; i < nodes_.size(); ++i) {
      if (!std::isfinite(nodes_[i])) throw ConstructionError("CauchyPair: non-finite node");
      for (std::size_t j = 0; j < i; ++j)
        if (nodes_[i] == nodes_[j]) throw ConstructionError("CauchyPair: duplicate nodes");
    }
    for (std::size_t i = 0; i < poles_.size(); ++i) {
      if (!std::isfinite(poles_[i].real()) || !std::isfinite(poles_[i].imag()))
        throw ConstructionError("CauchyPair: non-finite pole");
      for (std::size_t j = 0; j < i; ++j)
        if (poles_[i] == poles_[j]) throw ConstructionError("CauchyPair: duplicate poles");
      for (Scalar c : nodes_)
        if (poles_[i] == Complex(c)) throw ConstructionError("CauchyPair: node coincides with a pole");
    }
    // Conjugate closure: every non-real pole must have a partner.
    for (const Complex& z : poles_) {
      if (z.imag() == Scalar(0)) continue;
      const Scalar scale = std::max(Scalar(1), std::abs(z));
      const bool found = std::any_of(poles_.begin(), poles_.end(), [&](const Complex& w) {
        return std::abs(w - std::conj(z)) <= conj_tol * scale;
      });
      if (!found) throw ConstructionError("CauchyPair: pole set is not conjugate-closed");
    }
  }

  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<Scalar>& nodes() const { return nodes_; }
  const std::vector<Complex>& poles() const { return poles_; }

private:
  std::vector<Scalar> nodes_;
  std::vector<Complex> poles_;
};

template <typename Scalar>
CMatrix<Scalar> matrix_B(const CauchyPair<Scalar>& pair) {
  const int n = pair.size();
  CMatrix<Scalar> b(n, n);
  for (int j = 0; j < n; ++j)
    for (int k = 0; k < n; ++k)
      b(j, k) = Scalar(1) / (std::complex<Scalar>(pair.nodes()[j]) - pair.poles()[k]);
  return b;
}

/// Entries squared one by one, so A is exactly B o B.
template <typename Scalar>
CMatrix<Scalar> matrix_A(const CauchyPair<Scalar>& pair) {
  CMatrix<Scalar> a = matrix_B(pair);
  for (Eigen::Index i = 0; i < a.size(); ++i) a(i) = a(i) * a(i);
  return a;
}

/// prod_{i<j} (c_j - c_i)(z_i - z_j) / prod_{i,j} (c_i - z_j).
template <typename Scalar>
std::complex<Scalar> cauchy_det_closed_form(const CauchyPair<Scalar>& pair) {
  using C = std::complex<Scalar>;
  const auto& c = pair.nodes();
  const auto& z = pair.poles();
  const int n = pair.size();
  C num(1), den(1);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) num *= C(c[j] - c[i]) * (z[i] - z[j]);
    for (int j = 0; j < n; ++j) den *= C(c[i]) - z[j];
  }
  return num / den;
}

template <typename Scalar>
std::complex<Scalar> det_lu(const CMatrix<Scalar>& m) {
  if (m.rows() != m.cols()) throw SizeError("det_lu: matrix is not square");
  return m.partialPivLu().determinant();
}

namespace detail {

#if defined(__SIZEOF_FLOAT128__) && !defined(__clang__)
using Extended = __float128;
#else
using Extended = long double;
#endif

// Bare complex arithmetic over Extended; std::complex is unspecified for it.
struct XComplex {
  Extended re = 0, im = 0;
  friend XComplex operator-(XComplex a, XComplex b) { return {a.re - b.re, a.im - b.im}; }
  friend XComplex operator*(XComplex a, XComplex b) { return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re}; }
  friend XComplex operator/(XComplex a, XComplex b) {
    const Extended d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  Extended mag1() const { return (re < 0 ? -re : re) + (im < 0 ? -im : im); }
};

} // namespace detail

/// det((c_j - z_k)^-power), power 1 (B) or 2 (A), by partially pivoted LU in
/// extended precision with the entries formed from the node/pole data.
///
/// Cauchy-type matrices with poles far from the nodes are numerically
/// low-rank (condition numbers ~1e14 already at n = 8, |z| <= 10), so
/// binary64 LU of the rounded entries can lose every digit of the
/// determinant. With 113-bit arithmetic the same elimination stays accurate
/// to working precision on such instances.
template <typename Scalar>
std::complex<Scalar> cauchy_power_det(const CauchyPair<Scalar>& pair, int power) {
  using detail::Extended;
  using detail::XComplex;
  if (power != 1 && power != 2) throw DomainError("cauchy_power_det: power must be 1 or 2");
  const int n = pair.size();
  std::vector<XComplex> m(static_cast<std::size_t>(n * n));
  auto at = [&](int i, int j) -> XComplex& { return m[static_cast<std::size_t>(i * n + j)]; };
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      const XComplex d{Extended(pair.nodes()[j]) - Extended(pair.poles()[k].real()), -Extended(pair.poles()[k].imag())};
      const XComplex b = XComplex{1, 0} / d;
      at(j, k) = power == 1 ? b : b * b;
    }
  }
  XComplex det{1, 0};
  for (int col = 0; col < n; ++col) {
    int piv = col;
    for (int r = col + 1; r < n; ++r)
      if (at(r, col).mag1() > at(piv, col).mag1()) piv = r;
    if (piv != col) {
      for (int k = 0; k < n; ++k) std::swap(at(piv, k), at(col, k));
      det = XComplex{0, 0} - det;
    }
    const XComplex p = at(col, col);
    det = det * p;
    if (p.re == 0 && p.im == 0) break;
    for (int r = col + 1; r < n; ++r) {
      const XComplex f = at(r, col) / p;
      for (int k = col + 1; k < n; ++k) at(r, k) = at(r, k) - f * at(col, k);
    }
  }
  return {static_cast<Scalar>(det.re), static_cast<Scalar>(det.im)};
}

inline constexpr int kMaxPermanentSize = 20;

/// Ryser's formula with Gray-code column updates, O(2^n n).
///   per M = (-1)^n sum_{S} (-1)^{|S|} prod_i sum_{j in S} m_ij
template <typename Scalar>
std::complex<Scalar> permanent_ryser(const CMatrix<Scalar>& m) {
  using C = std::complex<Scalar>;
  if (m.rows() != m.cols()) throw SizeError("permanent_ryser: matrix is not square");
  const int n = static_cast<int>(m.rows());
  if (n > kMaxPermanentSize) throw SizeError("permanent_ryser: n > 20");
  if (n == 0) return C(1);

  std::vector<C> row_sums(static_cast<std::size_t>(n), C(0));
  C total(0);
  const std::uint64_t subsets = std::uint64_t(1) << n;
  std::uint64_t gray = 0;
  int members = 0;
  for (std::uint64_t k = 1; k < subsets; ++k) {
    const int col = std::countr_zero(k);
    const std::uint64_t bit = std::uint64_t(1) << col;
    gray ^= bit;
    const bool added = (gray & bit) != 0;
    members += added ? 1 : -1;
    for (int i = 0; i < n; ++i) {
      if (added)
        row_sums[static_cast<std::size_t>(i)] += m(i, col);
      else
        row_sums[static_cast<std::size_t>(i)] -= m(i, col);
    }
    C prod(1);
    for (const C& s : row_sums) prod *= s;
    if (members % 2 == 0)
      total += prod;
    else
      total -= prod;
  }
  return (n % 2 == 0) ? total : -total;
}

template <typename Scalar = double>
struct BorchardtReport {
  std::complex<Scalar> lhs; // det A
  std::complex<Scalar> rhs; // det B * per B
  Scalar rel_residual;
};

template <typename Scalar>
BorchardtReport<Scalar> borchardt_check(const CauchyPair<Scalar>& pair) {
  if (pair.size() > kMaxPermanentSize) throw SizeError("borchardt_check: n > 20");
  BorchardtReport<Scalar> rep;
  rep.lhs = cauchy_power_det(pair, 2);
  rep.rhs = cauchy_power_det(pair, 1) * permanent_ryser(matrix_B(pair));
  const Scalar scale = std::max({std::abs(rep.lhs), std::abs(rep.rhs), std::numeric_limits<Scalar>::min()});
  rep.rel_residual = std::abs(rep.lhs - rep.rhs) / scale;
  return rep;
}

/// per B through the identity, det A / det B; throws when det B vanishes
/// numerically (it never does for a valid pair, but may underflow).
template <typename Scalar>
std::complex<Scalar> permanent_via_borchardt(const CauchyPair<Scalar>& pair) {
  const std::complex<Scalar> db = cauchy_det_closed_form(pair);
  if (db == std::complex<Scalar>(0) || !std::isfinite(std::abs(db)))
    throw EvaluationError("permanent_via_borchardt: det B is not representable");
  return cauchy_power_det(pair, 2) / db;
}

/// Hypotheses of the non-vanishing lemma; each violated clause is named.
template <typename Scalar>
std::vector<std::string> lemma_violations(const CauchyPair<Scalar>& pair) {
  std::vector<std::string> out;
  for (Scalar c : pair.nodes()) {
    if (!(c >= Scalar(-1) && c <= Scalar(1))) {
      out.push_back("node outside [-1,1]");
      break;
    }
  }
  for (const auto& z : pair.poles()) {
    if (!(std::abs(z) > Scalar(1))) {
      out.push_back("|z_k| <= 1");
      break;
    }
  }
  return out;
}

template <typename Scalar = double>
struct NonvanishingWitness {
  Scalar abs_det_A;
  bool conditions_ok;
  std::vector<std::string> violations;
};

/// Numerical evidence only: |det A| is reported whether or not the
/// hypotheses hold.
template <typename Scalar>
NonvanishingWitness<Scalar> nonvanishing_witness(const CauchyPair<Scalar>& pair) {
  NonvanishingWitness<Scalar> w;
  w.abs_det_A = std::abs(cauchy_power_det(pair, 2));
  w.violations = lemma_violations(pair);
  w.conditions_ok = w.violations.empty();
  return w;
}

// ---------------------------------------------------------------------------
// Komarov decomposition
//   p'/p - q'/q = (p/q) sum_k gamma_k / (x - z_k)^2,  gamma_k = q(z_k)/p'(z_k)

template <typename Scalar = double>
struct KomarovDecomposition {
  std::vector<std::complex<Scalar>> gamma;
  std::vector<std::complex<Scalar>> p_poles;
  std::vector<std::complex<Scalar>> q_poles;
};

template <typename Scalar>
KomarovDecomposition<Scalar> komarov_coefficients(const std::vector<std::complex<Scalar>>& p_poles,
                                                  const std::vector<std::complex<Scalar>>& q_poles) {
  using C = std::complex<Scalar>;
  if (p_poles.empty()) throw DomainError("komarov_coefficients: p has no roots");
  if (q_poles.size() > p_poles.size()) throw DomainError("komarov_coefficients: deg q > deg p");
  for (std::size_t i = 0; i < p_poles.size(); ++i)
    for (std::size_t j = 0; j < i; ++j)
      if (p_poles[i] == p_poles[j]) throw DomainError("komarov_coefficients: p has a repeated root");

  KomarovDecomposition<Scalar> d{{}, p_poles, q_poles};
  for (std::size_t k = 0; k < p_poles.size(); ++k) {
    C dp(1), q(1);
    for (std::size_t j = 0; j < p_poles.size(); ++j)
      if (j != k) dp *= p_poles[k] - p_poles[j];
    for (const C& zeta : q_poles) q *= p_poles[k] - zeta;
    d.gamma.push_back(q / dp);
  }
  return d;
}

/// |P(x) - Q(x) - (p(x)/q(x)) sum gamma_k/(x - z_k)^2| at a real x.
template <typename Scalar>
Scalar komarov_residual(const KomarovDecomposition<Scalar>& d, Scalar x) {
  using C = std::complex<Scalar>;
  const C cx(x);
  C lhs(0), ratio(1);
  for (const C& z : d.p_poles) {
    lhs += Scalar(1) / (cx - z);
    ratio *= cx - z;
  }
  for (const C& zeta : d.q_poles) {
    lhs -= Scalar(1) / (cx - zeta);
    ratio /= cx - zeta;
  }
  C sum(0);
  for (std::size_t k = 0; k < d.p_poles.size(); ++k) {
    const C u = cx - d.p_poles[k];
    sum += d.gamma[k] / (u * u);
  }
  return std::abs(lhs - ratio * sum);
}

template <typename Scalar = double>
struct KomarovValidation {
  Scalar max_residual;
  std::vector<Scalar> points;
};

/// Residual over `count` points of [-1,1] at distance >= `clearance` from
/// every pole of p and q.
template <typename Scalar>
KomarovValidation<Scalar> validate_komarov(const KomarovDecomposition<Scalar>& d, int count = 50,
                                           Scalar clearance = Scalar(0.1)) {
  // Candidates on a fine uniform grid, then an evenly spread subset.
  const int dense = 40 * count + 1;
  std::vector<Scalar> ok;
  for (int i = 0; i < dense; ++i) {
    const Scalar x = Scalar(-1) + Scalar(2) * Scalar(i) / Scalar(dense - 1);
    bool clear = true;
    for (const auto& z : d.p_poles) clear = clear && std::abs(std::complex<Scalar>(x) - z) >= clearance;
    for (const auto& z : d.q_poles) clear = clear && std::abs(std::complex<Scalar>(x) - z) >= clearance;
    if (clear) ok.push_back(x);
  }
  if (ok.empty()) throw DomainError("validate_komarov: no sample point clears the poles");
  KomarovValidation<Scalar> v{Scalar(0), {}};
  const int take = std::min<int>(count, static_cast<int>(ok.size()));
  for (int i = 0; i < take; ++i) {
    const std::size_t idx = take == 1 ? 0 : static_cast<std::size_t>(i) * (ok.size() - 1) / static_cast<std::size_t>(take - 1);
    v.points.push_back(ok[idx]);
    v.max_residual = std::max(v.max_residual, komarov_residual(d, ok[idx]));
  }
  return v;
}

// ---------------------------------------------------------------------------
// Random instances

/// Conjugate-closed set of n poles with modulus in [rmin, rmax]; each real
/// pole gets a random sign.
template <typename Scalar, typename Rng>
std::vector<std::complex<Scalar>> random_conjugate_poles(int n, Rng& rng, Scalar rmin = Scalar(1.1),
                                                         Scalar rmax = Scalar(10)) {
  using C = std::complex<Scalar>;
  std::uniform_real_distribution<Scalar> mod(rmin, rmax);
  std::uniform_real_distribution<Scalar> ang(Scalar(0.05), Scalar(3.09)); // keep pairs off the real axis
  std::uniform_int_distribution<int> npairs(0, n / 2);
  std::bernoulli_distribution coin(0.5);
  const int pairs = npairs(rng);
  std::vector<C> poles;
  for (int k = 0; k < pairs; ++k) {
    const C z = std::polar(mod(rng), ang(rng));
    poles.push_back(z);
    poles.push_back(std::conj(z));
  }
  while (static_cast<int>(poles.size()) < n) poles.emplace_back(coin(rng) ? mod(rng) : -mod(rng));
  return poles;
}

/// Random pair satisfying the lemma hypotheses: nodes in [-1,1], |z_k| in [rmin, rmax].
template <typename Scalar, typename Rng>
CauchyPair<Scalar> random_lemma_pair(int n, Rng& rng, Scalar rmin = Scalar(1.1), Scalar rmax = Scalar(10)) {
  if (n < 1) throw DomainError("random_lemma_pair: n must be positive");
  std::uniform_real_distribution<Scalar> node(Scalar(-1), Scalar(1));
  std::vector<Scalar> c;
  while (static_cast<int>(c.size()) < n) {
    const Scalar x = node(rng);
    if (std::find(c.begin(), c.end(), x) == c.end()) c.push_back(x);
  }
  return CauchyPair<Scalar>(std::move(c), random_conjugate_poles<Scalar>(n, rng, rmin, rmax));
}

template <typename Scalar = double>
struct ConditioningReport {
  Scalar min_node_separation;
  Scalar min_pole_distance; // to the segment [-1,1]
  Scalar condition_number;  // 2-norm condition number of B
  Scalar lu_error_estimate; // n eps cond(B): what a working-precision det_lu(B) can promise
  bool ill_conditioned;     // node separation or pole distance below threshold
};

/// Flags pairs with nearly coincident nodes or poles close to [-1,1]; the
/// condition number of B is reported alongside for information.
template <typename Scalar>
ConditioningReport<Scalar> conditioning(const CauchyPair<Scalar>& pair, Scalar min_sep = Scalar(1e-3),
                                        Scalar min_dist = Scalar(0.05)) {
  std::vector<Scalar> c = pair.nodes();
  std::sort(c.begin(), c.end());
  Scalar sep = std::numeric_limits<Scalar>::infinity();
  for (std::size_t i = 1; i < c.size(); ++i) sep = std::min(sep, c[i] - c[i - 1]);
  Scalar dist = std::numeric_limits<Scalar>::infinity();
  for (const auto& z : pair.poles()) {
    const Scalar dx = std::max(Scalar(0), std::abs(z.real()) - Scalar(1));
    dist = std::min(dist, std::hypot(dx, z.imag()));
  }
  const Eigen::JacobiSVD<CMatrix<Scalar>> svd(matrix_B(pair));
  const auto& sv = svd.singularValues();
  const Scalar cond = sv(0) / sv(sv.size() - 1);
  const Scalar err = Scalar(pair.size()) * std::numeric_limits<Scalar>::epsilon() * cond;
  return {sep, dist, cond, err, sep < min_sep || dist < min_dist};
}

} // namespace simplefrac

#endif
