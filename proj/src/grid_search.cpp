#include "simplefrac/grid_search.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "simplefrac/errors.hpp"

namespace simplefrac {

std::vector<double> chebyshev_grid(int count, double lo, double hi) {
  if (count < 2) throw DomainError("chebyshev_grid: at least two points required");
  std::vector<double> x(static_cast<std::size_t>(count));
  const double mid = 0.5 * (lo + hi);
  const double half = 0.5 * (hi - lo);
  for (int j = 0; j < count; ++j)
    x[static_cast<std::size_t>(j)] = mid - half * std::cos(std::numbers::pi * j / (count - 1));
  x.front() = lo;
  x.back() = hi;
  // cos(pi/2) is not exactly zero; keep the grid symmetric about the midpoint.
  if (count % 2 == 1) x[static_cast<std::size_t>(count / 2)] = mid;
  return x;
}

Extremum golden_maximize(const RealFunction& g, double lo, double hi, double tol, int max_iter) {
  constexpr double kInvPhi = 0.6180339887498949;
  double a = lo;
  double b = hi;
  double c = b - kInvPhi * (b - a);
  double d = a + kInvPhi * (b - a);
  double gc = g(c);
  double gd = g(d);
  Extremum best{lo, g(lo)};
  const double ghi = g(hi);
  if (ghi > best.value) best = {hi, ghi};
  int it = 0;
  while (b - a > tol) {
    if (++it > max_iter) {
      if (gc > best.value) best = {c, gc};
      throw ToleranceNotMet("golden_maximize: bracket did not shrink to tolerance", best.value, best.location);
    }
    if (gc >= gd) {
      b = d;
      d = c;
      gd = gc;
      c = b - kInvPhi * (b - a);
      gc = g(c);
    } else {
      a = c;
      c = d;
      gc = gd;
      d = a + kInvPhi * (b - a);
      gd = g(d);
    }
  }
  if (gc > best.value) best = {c, gc};
  if (gd > best.value) best = {d, gd};
  return best;
}

namespace {

std::vector<double> sample(const RealFunction& g, const std::vector<double>& x) {
  std::vector<double> v(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) v[i] = g(x[i]);
  return v;
}

bool is_local_max(const std::vector<double>& v, std::size_t i) {
  const bool left = (i == 0) || v[i] >= v[i - 1];
  const bool right = (i + 1 == v.size()) || v[i] >= v[i + 1];
  return left && right;
}

Extremum refine(const RealFunction& g, const std::vector<double>& x, std::size_t i, double gi, double tol) {
  const double lo = x[i == 0 ? 0 : i - 1];
  const double hi = x[i + 1 == x.size() ? i : i + 1];
  Extremum e = golden_maximize(g, lo, hi, tol);
  if (gi > e.value) e = {x[i], gi};
  return e;
}

} // namespace

Extremum grid_maximize(const RealFunction& g, int grid_count, double tol, double lo, double hi) {
  const auto x = chebyshev_grid(grid_count, lo, hi);
  const auto v = sample(g, x);
  Extremum best{x[0], v[0]};
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (!is_local_max(v, i)) continue;
    const Extremum e = refine(g, x, i, v[i], tol);
    if (e.value > best.value) best = e;
  }
  return best;
}

std::vector<Extremum> local_extrema(const RealFunction& r, int grid_count, double tol) {
  const auto x = chebyshev_grid(grid_count);
  const auto v = sample(r, x);
  std::vector<double> mag(v.size());
  std::transform(v.begin(), v.end(), mag.begin(), [](double y) { return std::abs(y); });

  std::vector<Extremum> out;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (mag[i] == 0.0 || !is_local_max(mag, i)) continue;
    const double sign = v[i] > 0 ? 1.0 : -1.0;
    const auto signed_r = [&](double t) { return sign * r(t); };
    const Extremum e = refine(signed_r, x, i, mag[i], tol);
    const Extremum signed_e{e.location, sign * e.value};
    if (!out.empty() && std::abs(out.back().location - signed_e.location) <= 4 * tol &&
        (out.back().value > 0) == (signed_e.value > 0)) {
      if (std::abs(signed_e.value) > std::abs(out.back().value)) out.back() = signed_e;
      continue;
    }
    out.push_back(signed_e);
  }
  std::sort(out.begin(), out.end(), [](const Extremum& a, const Extremum& b) { return a.location < b.location; });
  return out;
}

std::vector<Extremum> alternating_subsequence(const std::vector<Extremum>& extrema) {
  std::vector<Extremum> out;
  for (const Extremum& e : extrema) {
    if (!out.empty() && (out.back().value > 0) == (e.value > 0)) {
      if (std::abs(e.value) > std::abs(out.back().value)) out.back() = e;
      continue;
    }
    out.push_back(e);
  }
  return out;
}

} // namespace simplefrac
