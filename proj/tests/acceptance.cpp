// One PASS/FAIL line per acceptance criterion; exits non-zero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <random>
#include <sstream>
#include <string>

#include "oracles.hpp"
#include "simplefrac/bernstein_bounds.hpp"
#include "simplefrac/cauchy_borchardt.hpp"
#include "simplefrac/cheb_core.hpp"
#include "simplefrac/extremal_fractions.hpp"
#include "simplefrac/minimax_solver.hpp"

using namespace simplefrac;
using C = std::complex<double>;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;

  void require(bool ok, const std::string& what) {
    if (!ok && pass) detail << "first failure: " << what << "; ";
    pass = pass && ok;
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

long double tcheb(int n, double a) { return oracle::cheb_recurrence_ld(true, n, a); }

constexpr double kGridA[] = {1.5, 2.0, 3.0, 5.0};

void weighted_norm(Outcome& o) {
  const auto t0 = Clock::now();
  double worst = 0.0;
  for (int n = 1; n <= 12; ++n)
    for (double a : kGridA) {
      const long double t = tcheb(n, a);
      const double want = static_cast<double>(n / std::sqrt(t * t - 1.0L));
      const double got = weighted_sup_norm(build_extremal_weighted({n, a})).value;
      const double rel = std::abs(got - want) / want;
      worst = std::max(worst, rel);
      o.require(rel <= 1e-9, "n=" + std::to_string(n) + " a=" + std::to_string(a));
    }
  const double dt = seconds_since(t0);
  o.require(dt < 5.0, "runtime");
  o.detail << "max rel err " << worst << ", " << dt << " s";
}

void equioscillation(Outcome& o) {
  double worst_level = 0.0, worst_zero = 0.0, worst_root = 0.0;
  for (int n = 1; n <= 12; ++n)
    for (double a : kGridA) {
      const FixedPoleClass cls(n, a);
      const auto w = alternance_points_weighted(cls);
      const auto& rep = w.alternance;
      const long double t = tcheb(n, a);
      const double level = static_cast<double>(n / std::sqrt(t * t - 1.0L));
      o.require(static_cast<int>(rep.points.size()) == n, "extremum count");
      o.require(rep.sign_pattern_ok, "sign pattern");
      for (std::size_t k = 0; k < rep.points.size(); ++k) {
        worst_level = std::max(worst_level, std::abs(std::abs(rep.values[k]) - level));
        worst_root = std::max(worst_root, static_cast<double>(std::abs(
                                              oracle::cheb_recurrence_ld(true, n, rep.points[k]) - 1.0L / t)));
        if (k > 0) o.require(rep.values[k] * rep.values[k - 1] < 0, "alternation");
      }
      o.require(static_cast<int>(w.zeros.size()) == n + 1, "zero count");
      const auto rho = build_extremal_weighted(cls);
      for (int k = 0; k <= n; ++k) {
        const double want = std::cos(std::numbers::pi * (n - k) / n);
        worst_zero = std::max(worst_zero, std::abs(w.zeros[static_cast<std::size_t>(k)] - want));
        worst_zero = std::max(worst_zero, std::abs(weighted_value(rho, Weight::Chebyshev, want)));
      }
    }
  o.require(worst_level <= 1e-10, "level");
  o.require(worst_root <= 1e-10, "extrema at T_n(x) = 1/T_n(a)");
  o.require(worst_zero <= 1e-12, "zeros");
  o.detail << "level dev " << worst_level << ", T_n residual " << worst_root << ", zero dev " << worst_zero;
}

void pole_geometry(Outcome& o) {
  double worst_on = 0.0;
  for (int n = 1; n <= 12; ++n)
    for (double a : kGridA) {
      const EllipseParam<double> e(a);
      for (const C& z : build_extremal_weighted({n, a}).poles()) {
        worst_on = std::max(worst_on, std::abs(e.residual(z)));
        o.require(std::abs(z) > 1.0, "weighted |z| > 1");
      }
    }
  o.require(worst_on <= 1e-10, "weighted poles on E_a");
  double min_mod = INFINITY;
  for (int n = 4; n <= 8; ++n)
    for (double a : {3.0, 5.0}) {
      const FixedPoleClass cls(n, a);
      const auto rep = verify_pole_annulus(cls, build_candidate_unweighted(cls));
      const std::string tag = " (n=" + std::to_string(n) + ", a=" + std::to_string(a) + ")";
      o.require(rep.all_in_closure_ea, "candidate in closure of E_a" + tag);
      o.require(rep.all_outside_et.value_or(false), "candidate outside inner ellipse" + tag);
      o.require(rep.all_outside_unit_disk, "candidate |z| > 1" + tag);
      min_mod = std::min(min_mod, rep.min_modulus);
    }
  o.detail << "max E_a residual " << worst_on << ", min candidate |z| " << min_mod;
}

void bracket(Outcome& o) {
  for (double a : {3.0, 5.0}) {
    double prev_dev = INFINITY;
    o.detail << "a=" << a << " ratios";
    for (int n = 4; n <= 8; ++n) {
      const FixedPoleClass cls(n, a);
      const auto lam = lambda_bounds(cls);
      const auto b = dvp_bracket(cls);
      const double lo = lam.lower * (1 - 1e-6), hi = lam.upper * (1 + 1e-6);
      o.require(b.lower >= lo && b.lower <= hi, "lower in lambda interval");
      o.require(b.upper >= lo && b.upper <= hi, "upper in lambda interval");
      o.require(b.lower <= b.upper, "bracket ordered");
      const double ratio = b.upper * static_cast<double>(tcheb(n, a) - tcheb(n - 2, a)) / (2.0 * n);
      o.require(std::abs(ratio - b.ratio) <= 1e-12 * ratio, "reported ratio");
      o.require(ratio >= 0.9 && ratio <= 1.1, "ratio in [0.9, 1.1]");
      const double dev = std::abs(ratio - 1.0);
      if (a == 5.0) o.require(dev < prev_dev, "ratio tightens monotonically at a=5");
      prev_dev = dev;
      char buf[32];
      std::snprintf(buf, sizeof buf, " %.6f", ratio);
      o.detail << buf;
    }
    o.detail << "; ";
  }
}

void borchardt(Outcome& o) {
  const auto t0 = Clock::now();
  const CauchyPair<double> worked({0.0, 0.5}, {C(2.0), C(-2.0)});
  const auto w = borchardt_check(worked);
  o.require(std::abs(w.lhs - C(-16.0 / 225.0)) <= 1e-14, "worked det A");
  o.require(std::abs(w.rhs - C(-16.0 / 225.0)) <= 1e-14, "worked det B per B");

  std::mt19937_64 rng(5);
  double worst = 0.0, worst_oracle = 0.0;
  for (int trial = 0; trial < 1000; ++trial) {
    const int n = 1 + trial % 8;
    const auto pair = random_lemma_pair<double>(n, rng);
    worst = std::max(worst, borchardt_check(pair).rel_residual);
    if (n <= 6) {
      // Ryser against the n! expansion. (A Leibniz det A would lose everything
      // to cancellation: |det A| falls far below the size of its terms.)
      const auto b = matrix_B(pair);
      worst_oracle = std::max(worst_oracle, oracle::rel_diff(permanent_ryser(b), oracle::permanent_naive(b)));
    }
  }
  const double dt = seconds_since(t0);
  o.require(worst <= 1e-10, "identity residual");
  o.require(worst_oracle <= 1e-8, "permanent cross-check");
  o.require(dt < 10.0, "runtime");
  o.detail << "max rel residual " << worst << " (Ryser vs expansion " << worst_oracle << "), " << dt << " s";
}

void nonvanishing(Outcome& o) {
  std::mt19937_64 rng(5); // the same instances as the identity check
  double smallest = INFINITY;
  for (int trial = 0; trial < 1000; ++trial) {
    const auto pair = random_lemma_pair<double>(1 + trial % 8, rng);
    const auto w = nonvanishing_witness(pair);
    o.require(w.conditions_ok, "generated pair meets the hypotheses");
    smallest = std::min(smallest, w.abs_det_A);
  }
  o.require(smallest >= 1e-300, "|det A| bounded away from zero");

  const auto inside = nonvanishing_witness(CauchyPair<double>({0.0, 0.5}, {C(0, 0.5), C(0, -0.5)}));
  o.require(!inside.conditions_ok && inside.violations == std::vector<std::string>{"|z_k| <= 1"}, "gate |z| <= 1");
  const auto outside = nonvanishing_witness(CauchyPair<double>({0.0, 1.5}, {C(2.0), C(-2.0)}));
  o.require(!outside.conditions_ok && outside.violations == std::vector<std::string>{"node outside [-1,1]"},
            "gate node outside");
  o.detail << "min |det A| " << smallest;
}

void komarov(Outcome& o) {
  const auto d = komarov_coefficients<double>({C(2.0), C(-2.0)}, {C(3.0)});
  o.require(d.gamma.size() == 2 && std::abs(d.gamma[0] - C(-0.25)) <= 1e-14 && std::abs(d.gamma[1] - C(1.25)) <= 1e-14,
            "hand case");
  std::mt19937_64 rng(17);
  double worst = 0.0;
  for (int trial = 0; trial < 200; ++trial) {
    const int n = 1 + trial % 8;
    std::uniform_int_distribution<int> m(0, n);
    const auto p = random_conjugate_poles<double>(n, rng);
    const auto q = random_conjugate_poles<double>(m(rng), rng);
    worst = std::max(worst, validate_komarov(komarov_coefficients(p, q)).max_residual);
  }
  o.require(worst <= 1e-9, "random residual");
  o.detail << "max residual " << worst;
}

void optimality(Outcome& o) {
  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> size(1e-4, 1e-1), unit(-1.0, 1.0);
  std::bernoulli_distribution coin(0.5);
  double closest = INFINITY;
  int count = 0;
  for (int n : {2, 4, 8})
    for (double a : {2.0, 3.0}) {
      const FixedPoleClass cls(n, a);
      const long double t = tcheb(n, a);
      const double best = static_cast<double>(n / std::sqrt(t * t - 1.0L));
      const auto rho = build_extremal_weighted(cls);
      for (int trial = 0; trial < 500; ++trial) {
        // The fixed pole a stays; everything else moves, conjugate pairs together.
        std::vector<double> reals;
        for (double r : rho.real_poles()) reals.push_back(r == a ? a : r * (1.0 + (coin(rng) ? 1 : -1) * size(rng)));
        std::vector<C> pairs;
        for (const C& z : rho.pair_poles()) {
          const C dz = size(rng) * std::abs(z) * std::polar(1.0, std::numbers::pi * unit(rng));
          pairs.push_back(C((z + dz).real(), std::abs((z + dz).imag())));
        }
        const double v = weighted_sup_norm(LogDerivative::from_parts(reals, pairs)).value;
        o.require(v >= best - 1e-9, "perturbation beat the optimum");
        closest = std::min(closest, (v - best) / best);
        ++count;
      }
    }
  o.detail << count << " perturbations, smallest relative excess " << closest;
}

TargetFunction perturbed_target(double eps) {
  const std::vector<C> poles{C(2.0), C(-2.0)};
  const LogDerivative r(poles);
  return {[r, eps](double x) { return eval_ld(r, x) + eps * eval_cheb(ChebKind::First, 3, x); }, "ld:2,-2;T3"};
}

void solver(Outcome& o) {
  const auto f = perturbed_target(1e-3);
  const auto res = solve_best_ld(f, 2);
  o.require(res.certified, "certified");
  o.require(res.alternance.points.size() >= 3, "n+1 alternance points");
  o.require(res.gap <= 0.01, "gap <= 1%");
  const auto again = solve_best_ld(f, 2);
  o.require(again.error == res.error && again.rho.poles() == res.rho.poles() && again.gap == res.gap,
            "deterministic with a fixed seed");

  const auto exact = solve_best_ld(perturbed_target(0.0), 2);
  const auto& rp = exact.rho.real_poles();
  o.require(rp.size() == 2 && std::abs(rp[0] + 2.0) <= 1e-6 && std::abs(rp[1] - 2.0) <= 1e-6, "eps = 0 poles");
  o.detail << "error " << res.error << ", gap " << res.gap << ", " << res.alternance.points.size()
           << " alternance points; eps=0 error " << exact.error;
}

void corollary(Outcome& o) {
  std::mt19937_64 rng(2024);
  int count = 0;
  for (int t = 0; t < 200; ++t) {
    const int n = 4 + t % 7;
    const double a = (t / 7) % 3 == 0 ? 2.5 : ((t / 7) % 3 == 1 ? 3.0 : 5.0);
    const auto c = check_corollary(random_admissible(n, a, rng));
    o.require(c.both_hold, "random admissible polynomial");
    count += c.both_hold;
  }
  double prev1 = 0.0, prev2 = 0.0;
  for (int n = 4; n <= 30; ++n) {
    const auto r = asymptotic_ratios(n, 3.0);
    // r1 = sqrt((T_n(a)-1)/(T_n(a)+1)) rounds to exactly 1 once T_n(a) > 2/eps.
    o.require(prev1 < 1.0 ? r.r1 > prev1 : r.r1 == 1.0, "r1 increasing");
    o.require(r.r2_lower.has_value() && *r.r2_lower > prev2, "r2_lower increasing");
    prev1 = r.r1;
    prev2 = r.r2_lower.value_or(prev2);
  }
  o.require(prev1 > 0.999, "r1(30) > 0.999");
  o.require(prev2 > 0.999, "r2_lower(30) > 0.999");
  o.detail << count << "/200 hold; at n=30, a=3: r1 " << prev1 << ", r2_lower " << prev2;
}

} // namespace

int main() {
  const std::pair<const char*, std::function<void(Outcome&)>> criteria[] = {
      {"weighted extremal norm", weighted_norm},
      {"equioscillation of the weighted extremal", equioscillation},
      {"pole geometry", pole_geometry},
      {"unweighted bracket", bracket},
      {"Borchardt identity", borchardt},
      {"det A non-vanishing", nonvanishing},
      {"Komarov decomposition", komarov},
      {"optimality under perturbation", optimality},
      {"solver certificate", solver},
      {"Bernstein-type inequalities", corollary},
  };
  int failed = 0;
  int index = 0;
  for (const auto& [name, check] : criteria) {
    ++index;
    Outcome o;
    try {
      check(o);
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail << "exception: " << e.what();
    }
    failed += !o.pass;
    std::printf("%s %2d %s: %s\n", o.pass ? "PASS" : "FAIL", index, name, o.detail.str().c_str());
  }
  std::printf("%d of %d criteria passed\n", index - failed, index);
  return failed == 0 ? 0 : 1;
}
