#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <limits>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "simplefrac/cheb_core.hpp"

using namespace simplefrac;
using C = std::complex<double>;

namespace {

double ulp_distance(double got, double want) {
  const double ulp = std::nextafter(std::abs(want), INFINITY) - std::abs(want);
  return std::abs(got - want) / ulp;
}

} // namespace

TEST_CASE("eval_cheb reference values") {
  CHECK(eval_cheb(ChebKind::First, 0, 0.37) == 1.0);
  CHECK(ulp_distance(eval_cheb(ChebKind::First, 3, 0.5), -1.0) <= 4.0);
  CHECK(ulp_distance(eval_cheb(ChebKind::Second, 1, 0.25), 0.5) <= 4.0);

  // 8x^4 - 8x^2 + 1 at x = 2 from the monomial coefficients.
  const auto t4 = oracle::cheb_t_monomial(4);
  CHECK(t4 == std::vector<long double>{1, 0, -8, 0, 8});
  CHECK(eval_cheb(ChebKind::First, 4, 2.0) == static_cast<double>(oracle::horner(t4, 2.0L)));
  CHECK(ulp_distance(eval_cheb(ChebKind::First, 4, 2.0), 97.0) <= 4.0);
}

TEST_CASE("eval_cheb accuracy against long-double recurrence for n <= 64") {
  const double eps = std::numeric_limits<double>::epsilon();
  for (double x : {0.37, 0.5, -0.7, 0.0, 0.9, -0.999}) {
    for (int n = 0; n <= 64; ++n) {
      const double t = eval_cheb(ChebKind::First, n, x);
      const double u = eval_cheb(ChebKind::Second, n, x);
      CHECK(std::abs(t - static_cast<double>(oracle::cheb_recurrence_ld(true, n, x))) <= 4.0 * (n + 1) * eps);
      CHECK(std::abs(u - static_cast<double>(oracle::cheb_recurrence_ld(false, n, x))) <= 4.0 * (n + 1) * (n + 1) * eps);
    }
  }
  for (double x : {2.0, -3.0, 1.5, 1.01, -1.2}) {
    for (int n = 0; n <= 64; ++n) {
      const double t = static_cast<double>(oracle::cheb_recurrence_ld(true, n, x));
      const double u = static_cast<double>(oracle::cheb_recurrence_ld(false, n, x));
      CHECK(ulp_distance(eval_cheb(ChebKind::First, n, x), t) <= 4.0 * (n + 1));
      CHECK(ulp_distance(eval_cheb(ChebKind::Second, n, x), u) <= 4.0 * (n + 1));
    }
  }
}

TEST_CASE("eval_cheb high degree off the interval stays finite and matches the log form") {
  const double v = eval_cheb(ChebKind::First, 200, 1.5);
  CHECK(std::isfinite(v));
  CHECK(std::log(v) == doctest::Approx(log_cheb_t(200, 1.5)).epsilon(1e-13));
  // The two off-interval paths agree at the switch-over degree.
  const double below = eval_cheb(ChebKind::First, 64, 1.3);
  const double cosh_form = std::cosh(64 * std::acosh(1.3));
  CHECK(below == doctest::Approx(cosh_form).epsilon(1e-12));
  CHECK(eval_cheb(ChebKind::Second, 100, -1.1) ==
        doctest::Approx(std::sinh(101 * std::acosh(1.1)) / std::sinh(std::acosh(1.1))).epsilon(1e-11));
}

TEST_CASE("eval_cheb endpoint values are exact") {
  for (int n = 0; n <= 40; ++n) {
    CHECK(eval_cheb(ChebKind::First, n, 1.0) == 1.0);
    CHECK(eval_cheb(ChebKind::First, n, -1.0) == (n % 2 == 0 ? 1.0 : -1.0));
    CHECK(eval_cheb(ChebKind::Second, n, 1.0) == n + 1.0);
  }
}

TEST_CASE("eval_cheb rejects bad input") {
  CHECK_THROWS_AS(eval_cheb(ChebKind::First, 3, std::numeric_limits<double>::quiet_NaN()), DomainError);
  CHECK_THROWS_AS(eval_cheb(ChebKind::First, 3, C(INFINITY, 0.0)), DomainError);
  CHECK_THROWS_AS(eval_cheb(ChebKind::First, -1, 0.5), DomainError);
}

TEST_CASE("branch of sqrt(z^2 - 1) is 1 at sqrt 2") {
  const C z(std::numbers::sqrt2, 0.0);
  const C w = joukowski_inverse(z);
  CHECK(std::abs((w - z) - C(1.0, 0.0)) < 1e-15);
  // |w| >= 1 everywhere, including the negative real axis.
  CHECK(std::abs(joukowski_inverse(C(-2.0, 0.0))) > 1.0);
  CHECK(std::abs(joukowski_inverse(C(0.3, -1e-3))) >= 1.0);
}

TEST_CASE("Pell identity T_n^2 - (x^2 - 1) U_{n-1}^2 = 1") {
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> xs(-3.0, 3.0);
  for (int trial = 0; trial < 400; ++trial) {
    const double x = xs(rng);
    for (int n = 1; n <= 32; ++n) {
      const double t = eval_cheb(ChebKind::First, n, x);
      const double u = eval_cheb(ChebKind::Second, n - 1, x);
      const double lhs = t * t - (x * x - 1.0) * u * u;
      const double scale = std::max(t * t, 1.0);
      CHECK(std::abs(lhs - 1.0) <= 1e-12 * scale);
    }
  }
}

TEST_CASE("derivative identity (x^2-1) U'_{n-1} = n T_n - x U_{n-1} by central differences") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> xs(-3.0, 3.0);
  const double h = 1e-6;
  for (int trial = 0; trial < 200; ++trial) {
    const double x = xs(rng);
    for (int n = 1; n <= 16; ++n) {
      const double du = (eval_cheb(ChebKind::Second, n - 1, x + h) - eval_cheb(ChebKind::Second, n - 1, x - h)) / (2 * h);
      const double lhs = (x * x - 1.0) * du;
      const double rhs = n * eval_cheb(ChebKind::First, n, x) - x * eval_cheb(ChebKind::Second, n - 1, x);
      const double scale = std::max({std::abs(rhs), n * std::abs(eval_cheb(ChebKind::First, n, x)), 1.0});
      CHECK(std::abs(lhs - rhs) <= 1e-6 * scale);
    }
  }
}

TEST_CASE("T_n(joukowski(w)) = (w^n + w^-n)/2") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> radius(1.1, 4.0), angle(0.0, 2 * std::numbers::pi);
  for (int trial = 0; trial < 300; ++trial) {
    const C w = std::polar(radius(rng), angle(rng));
    const C z = joukowski(w);
    for (int n = 0; n <= 20; ++n) {
      const C want = 0.5 * (std::pow(w, n) + std::pow(w, -n));
      const C got = eval_cheb(ChebKind::First, n, z);
      CHECK(std::abs(got - want) <= 1e-11 * std::abs(want));
    }
  }
}

TEST_CASE("complex U_n near the foci agrees with the recurrence") {
  for (C z : {C(1.0, 1e-5), C(-1.0 + 1e-6, 2e-6), C(0.3, 0.4)}) {
    for (int n = 0; n <= 12; ++n) {
      C prev(1.0), cur(2.0 * z);
      if (n == 0) cur = prev;
      for (int k = 1; k < n; ++k) {
        const C next = 2.0 * z * cur - prev;
        prev = cur;
        cur = next;
      }
      CHECK(std::abs(eval_cheb(ChebKind::Second, n, z) - cur) <= 1e-10 * std::max(1.0, std::abs(cur)));
    }
  }
}

TEST_CASE("joukowski examples and domain") {
  CHECK(std::abs(joukowski(C(1.0, 0.0)) - C(1.0, 0.0)) == 0.0);
  CHECK(std::abs(joukowski(std::polar(1.0, std::numbers::pi / 2))) < 1e-16);
  CHECK(joukowski(C(2.0, 0.0)).real() == 1.25);
  CHECK_THROWS_AS(joukowski(C(0.0, 0.0)), DomainError);
}

TEST_CASE("solve_t_equals examples") {
  auto r = solve_t_equals(2, 0.0);
  REQUIRE(r.size() == 2);
  CHECK(r[0] == doctest::Approx(-1.0 / std::sqrt(2.0)).epsilon(1e-15));
  CHECK(r[1] == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-15));

  r = solve_t_equals(2, 1.0 / 7.0);
  const double bis = oracle::bisect([](double x) { return 2 * x * x - 1 - 1.0 / 7.0; }, 0.0, 1.0);
  CHECK(bis == doctest::Approx(0.7559289).epsilon(1e-7));
  CHECK(r[1] == doctest::Approx(bis).epsilon(1e-14));
  CHECK(r[0] == doctest::Approx(-bis).epsilon(1e-14));

  r = solve_t_equals(1, 0.5);
  REQUIRE(r.size() == 1);
  CHECK(r[0] == doctest::Approx(0.5).epsilon(1e-15));

  CHECK_THROWS_AS(solve_t_equals(3, 1.0), DomainError);
  CHECK_THROWS_AS(solve_t_equals(3, -1.5), DomainError);
}

TEST_CASE("solve_t_equals roots are distinct, sorted and satisfy the equation") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> cs(-0.999, 0.999);
  for (int trial = 0; trial < 200; ++trial) {
    const double c = cs(rng);
    for (int n = 1; n <= 24; ++n) {
      const auto r = solve_t_equals(n, c);
      REQUIRE(static_cast<int>(r.size()) == n);
      for (std::size_t k = 0; k < r.size(); ++k) {
        CHECK(r[k] > -1.0);
        CHECK(r[k] < 1.0);
        CHECK(std::abs(eval_cheb(ChebKind::First, n, r[k]) - c) <= 1e-13);
        if (k > 0) CHECK(r[k] > r[k - 1]);
      }
    }
  }
}

TEST_CASE("ellipse_classify") {
  const EllipseParam<double> e(2.0);
  CHECK(e.classify(C(2.0, 0.0)).location == EllipseLocation::On);
  CHECK(e.classify(C(0.0, 0.0)).location == EllipseLocation::Inside);
  const auto out = e.classify(C(0.0, 3.0));
  CHECK(out.location == EllipseLocation::Outside);
  CHECK(out.residual == doctest::Approx(2.0));
  CHECK(e.semi_minor() == doctest::Approx(std::sqrt(3.0)));
  CHECK(e.classify(e.point(0.7)).location == EllipseLocation::On);
  CHECK_THROWS_AS(EllipseParam<double>(1.0), DomainError);
  CHECK_THROWS_AS(EllipseParam<double>(0.5), DomainError);
  // Joukowski image of |w| = r is E_p with p = (r + 1/r)/2.
  const auto ep = EllipseParam<double>::from_radius(3.0);
  CHECK(ep.classify(joukowski(std::polar(3.0, 1.1))).location == EllipseLocation::On);
}

TEST_CASE("scalar templating: long double path") {
  CHECK(eval_cheb(ChebKind::First, 4, 2.0L) == 97.0L);
  const auto r = solve_t_equals(3, 0.25L);
  CHECK(r.size() == 3);
}
