#include "simplefrac/minimax_solver.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <tuple>

#include <Eigen/Dense>
#include <unsupported/Eigen/NonLinearOptimization>
#include <unsupported/Eigen/NumericalDiff>

#include "simplefrac/errors.hpp"

namespace simplefrac {

TargetFunction zero_target() {
  return {[](double) { return 0.0; }, "zero"};
}

TargetFunction ld_target(const LogDerivative& rho, std::string description) {
  return {[rho](double x) { return eval_ld(rho, x); }, std::move(description)};
}

double residual_value(const TargetFunction& f, const LogDerivative& rho, double x, Weight w) {
  const double wx = weight_value(w, x);
  if (wx == 0.0) return 0.0;
  return wx * (f(x) - eval_ld(rho, x));
}

Extremum residual_sup(const TargetFunction& f, const LogDerivative& rho, Weight w, int grid, double tol) {
  if (rho.has_pole_on_segment()) throw DomainError("residual_sup: pole on [-1,1]");
  return grid_maximize([&](double x) { return std::abs(residual_value(f, rho, x, w)); }, grid, tol);
}

AlternanceReport residual_alternance(const TargetFunction& f, const LogDerivative& rho, int min_points,
                                     double rel_tol, Weight w, int grid) {
  if (rho.has_pole_on_segment()) throw DomainError("residual_alternance: pole on [-1,1]");
  AlternanceReport rep;
  rep.tolerance = rel_tol;
  const auto r = [&](double x) { return residual_value(f, rho, x, w); };
  const auto ext = local_extrema(r, grid, 1e-12);
  double level = 0.0;
  for (const Extremum& e : ext) level = std::max(level, std::abs(e.value));
  rep.level = level;
  if (level == 0.0) return rep;

  std::vector<Extremum> near;
  for (const Extremum& e : ext)
    if (std::abs(e.value) >= (1.0 - rel_tol) * level) near.push_back(e);
  for (const Extremum& e : alternating_subsequence(near)) {
    rep.points.push_back(e.location);
    rep.values.push_back(e.value);
  }
  rep.sign_pattern_ok = static_cast<int>(rep.points.size()) >= min_points;
  return rep;
}

int required_alternance_points(const LogDerivative& rho, int fixed_poles) {
  return rho.degree() - fixed_poles + 1;
}

std::vector<Extremum> best_alternating_subset(const std::vector<Extremum>& extrema, int count) {
  const int m = static_cast<int>(extrema.size());
  if (count < 1 || m < count) return {};
  // best[i][l]: largest achievable min-magnitude over alternating chains of
  // length l + 1 ending at i.
  constexpr double kNone = -1.0;
  std::vector<std::vector<double>> best(static_cast<std::size_t>(m), std::vector<double>(static_cast<std::size_t>(count), kNone));
  std::vector<std::vector<int>> prev(static_cast<std::size_t>(m), std::vector<int>(static_cast<std::size_t>(count), -1));
  for (int i = 0; i < m; ++i) {
    const double mag = std::abs(extrema[static_cast<std::size_t>(i)].value);
    best[static_cast<std::size_t>(i)][0] = mag;
    for (int j = 0; j < i; ++j) {
      if ((extrema[static_cast<std::size_t>(j)].value > 0) == (extrema[static_cast<std::size_t>(i)].value > 0)) continue;
      for (int l = 1; l < count; ++l) {
        const double from = best[static_cast<std::size_t>(j)][static_cast<std::size_t>(l - 1)];
        if (from == kNone) continue;
        const double cand = std::min(from, mag);
        if (cand > best[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)]) {
          best[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] = cand;
          prev[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)] = j;
        }
      }
    }
  }
  int end = -1;
  double top = kNone;
  for (int i = 0; i < m; ++i) {
    const double v = best[static_cast<std::size_t>(i)][static_cast<std::size_t>(count - 1)];
    if (v > top) {
      top = v;
      end = i;
    }
  }
  if (end < 0) return {};
  std::vector<Extremum> out;
  for (int i = end, l = count - 1; i >= 0 && l >= 0; i = prev[static_cast<std::size_t>(i)][static_cast<std::size_t>(l)], --l)
    out.push_back(extrema[static_cast<std::size_t>(i)]);
  std::reverse(out.begin(), out.end());
  return out;
}

double dvp_lower_bound(const TargetFunction& f, const LogDerivative& rho, Weight w, int fixed_poles, int grid) {
  if (rho.has_pole_on_segment()) throw DomainError("dvp_lower_bound: pole on [-1,1]");
  const int need = required_alternance_points(rho, fixed_poles);
  const auto ext = local_extrema([&](double x) { return residual_value(f, rho, x, w); }, grid, 1e-12);
  const auto set = best_alternating_subset(ext, need);
  if (set.empty())
    throw NotApplicable("dvp_lower_bound: residual has fewer than " + std::to_string(need) + " alternating extrema");
  double lo = std::numeric_limits<double>::infinity();
  for (const Extremum& e : set) lo = std::min(lo, std::abs(e.value));
  return lo;
}

Certificate certify_optimality(const TargetFunction& f, const LogDerivative& rho, const CertifyOptions& opts) {
  Certificate cert;
  if (rho.degree() > 1 && !(rho.min_pairwise_separation() > opts.pole_separation))
    cert.reasons.emplace_back("poles not pairwise distinct");
  if (!(rho.min_modulus() > 1.0)) cert.reasons.emplace_back("|z_k| <= 1");
  const int need = required_alternance_points(rho, opts.fixed_poles);
  if (rho.has_pole_on_segment()) {
    cert.reasons.emplace_back("residual not evaluable: pole on [-1,1]");
  } else {
    try {
      cert.alternance = residual_alternance(f, rho, need, opts.alternance_rel, opts.weight, opts.grid);
      if (!cert.alternance.sign_pattern_ok) {
        std::ostringstream msg;
        msg << "alternance has " << cert.alternance.points.size() << " < " << need << " points";
        cert.reasons.push_back(msg.str());
      }
    } catch (const EvaluationError& e) {
      cert.reasons.emplace_back(std::string("residual not evaluable: ") + e.what());
    }
  }
  cert.certified = cert.reasons.empty();
  return cert;
}

// ---------------------------------------------------------------------------
// Solver

namespace {

// Free poles: real ones as sign (1 + e^s), pairs as u + i e^v.
struct Shape {
  std::vector<double> signs;
  int pairs = 0;
  int dim() const { return static_cast<int>(signs.size()) + 2 * pairs; }
};

double clamp_exp(double s) { return std::exp(std::clamp(s, -40.0, 40.0)); }

LogDerivative make_rho(const Shape& shape, const Eigen::VectorXd& p, const std::vector<double>& fixed) {
  std::vector<double> reals = fixed;
  std::size_t k = 0;
  for (double sg : shape.signs) reals.push_back(sg * (1.0 + clamp_exp(p(static_cast<Eigen::Index>(k++)))));
  std::vector<cplx> pairs;
  for (int j = 0; j < shape.pairs; ++j) {
    const double u = p(static_cast<Eigen::Index>(k++));
    const double v = clamp_exp(p(static_cast<Eigen::Index>(k++)));
    pairs.emplace_back(u, v);
  }
  return LogDerivative::from_parts(std::move(reals), std::move(pairs));
}

constexpr double kBig = 1e30;

struct Problem {
  const TargetFunction& f;
  const SolveOptions& opts;
  std::vector<double> grid;
  std::vector<double> fx;
  std::vector<double> wx;

  // Residual on the descent grid; false when rho cannot be evaluated there.
  bool residual(const LogDerivative& rho, Eigen::VectorXd& out) const {
    out.resize(static_cast<Eigen::Index>(grid.size()));
    if (rho.has_pole_on_segment()) return false;
    try {
      for (std::size_t i = 0; i < grid.size(); ++i)
        out(static_cast<Eigen::Index>(i)) = wx[i] == 0.0 ? 0.0 : wx[i] * (fx[i] - eval_pole_sum(rho, grid[i], 1e-10));
    } catch (const EvaluationError&) {
      return false;
    }
    return out.allFinite();
  }

  double residual_at(const LogDerivative& rho, double x) const {
    const double w = weight_value(opts.weight, x);
    if (w == 0.0) return 0.0;
    return w * (f(x) - eval_pole_sum(rho, x, 1e-10));
  }

  // d/dx of w (f - rho): rho' in closed form, f' by a central difference
  // wide enough that the Newton Jacobian (itself a difference quotient of
  // this) is not dominated by rounding.
  double residual_derivative_at(const LogDerivative& rho, double x) const {
    const double step = 1e-5;
    const double a = std::max(-1.0, x - step);
    const double b = std::min(1.0, x + step);
    const double df = (f(b) - f(a)) / (b - a) - eval_ld_derivative(rho, x);
    if (opts.weight == Weight::None) return df;
    const double w = weight_value(opts.weight, x);
    if (w == 0.0) return 0.0;
    return -x / w * (f(x) - eval_pole_sum(rho, x, 1e-10)) + w * df;
  }

  double grid_max(const LogDerivative& rho) const {
    Eigen::VectorXd r;
    return residual(rho, r) ? r.cwiseAbs().maxCoeff() : kBig;
  }
};

// Penalised p-norm objective as a least-squares vector for Levenberg-Marquardt:
// F_i = (|e_i| / S)^{p/2} (signed e_i / S at p = 2), plus a soft barrier
// keeping every free pole outside the closed unit disk.
struct PNormFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const Problem* prob;
  const Shape* shape;
  double p;
  double scale;
  double penalty;

  int inputs() const { return shape->dim(); }
  int values() const { return static_cast<int>(prob->grid.size()) + shape->dim(); }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fvec) const {
    fvec.resize(values());
    const LogDerivative rho = make_rho(*shape, x, prob->opts.fixed_poles);
    Eigen::VectorXd r;
    const Eigen::Index m = static_cast<Eigen::Index>(prob->grid.size());
    if (!prob->residual(rho, r)) {
      fvec.setConstant(1e10);
      return 0;
    }
    for (Eigen::Index i = 0; i < m; ++i) {
      const double t = r(i) / scale;
      fvec(i) = p == 2.0 ? t : std::pow(std::abs(t), 0.5 * p);
    }
    // One barrier entry per free coordinate slot (pairs use their first slot).
    fvec.tail(shape->dim()).setZero();
    // Real poles satisfy |z| > 1 by construction.
    Eigen::Index k = m + static_cast<Eigen::Index>(shape->signs.size());
    for (const cplx& z : rho.pair_poles()) {
      fvec(k) = penalty * std::max(0.0, 1.05 - std::abs(z));
      k += 2;
    }
    return 0;
  }
};

// Equioscillation system in (free pole parameters, interior t_i, h):
//   e(t_i) - sigma (-1)^i h = 0,  e'(t_i) = 0 for interior t_i.
struct NewtonFunctor {
  using Scalar = double;
  enum { InputsAtCompileTime = Eigen::Dynamic, ValuesAtCompileTime = Eigen::Dynamic };
  using InputType = Eigen::VectorXd;
  using ValueType = Eigen::VectorXd;
  using JacobianType = Eigen::MatrixXd;

  const Problem* prob;
  const Shape* shape;
  std::vector<double> fixed_t; // NaN where t is free
  double sigma;

  int free_t() const {
    return static_cast<int>(std::count_if(fixed_t.begin(), fixed_t.end(), [](double t) { return std::isnan(t); }));
  }
  int inputs() const { return shape->dim() + free_t() + 1; }
  int values() const { return inputs(); }

  int operator()(const Eigen::VectorXd& x, Eigen::VectorXd& fvec) const {
    fvec.resize(values());
    const int d = shape->dim();
    const LogDerivative rho = make_rho(*shape, x.head(d), prob->opts.fixed_poles);
    const double h = x(x.size() - 1);
    if (rho.has_pole_on_segment()) {
      fvec.setConstant(kBig);
      return 0;
    }
    Eigen::Index tk = d;
    Eigen::Index row = 0;
    try {
      for (std::size_t i = 0; i < fixed_t.size(); ++i) {
        const bool free = std::isnan(fixed_t[i]);
        const double t = free ? std::clamp(x(tk++), -1.0, 1.0) : fixed_t[i];
        const double target = sigma * ((i % 2 == 0) ? 1.0 : -1.0) * h;
        fvec(row++) = prob->residual_at(rho, t) - target;
        if (free) fvec(row++) = prob->residual_derivative_at(rho, t);
      }
    } catch (const EvaluationError&) {
      fvec.setConstant(kBig);
    }
    return 0;
  }
};

struct StartResult {
  Shape shape;
  Eigen::VectorXd params;
  double error = kBig;
  bool ok = false;
  std::vector<std::string> notes;
};

// Every sign/pair topology for k free poles, balanced real configurations
// first. A real pole cannot change sign during descent, so start s uses
// topology s mod count and enough starts cover all of them.
std::vector<Shape> all_shapes(int k) {
  struct Keyed {
    int pairs, imbalance, npos;
  };
  std::vector<Keyed> keys;
  for (int j = 0; 2 * j <= k; ++j)
    for (int npos = k - 2 * j; npos >= 0; --npos) keys.push_back({j, std::abs(2 * npos - (k - 2 * j)), npos});
  std::stable_sort(keys.begin(), keys.end(), [](const Keyed& a, const Keyed& b) {
    return std::tie(a.pairs, a.imbalance) < std::tie(b.pairs, b.imbalance);
  });
  std::vector<Shape> out;
  for (const Keyed& kk : keys) {
    Shape s;
    s.pairs = kk.pairs;
    s.signs.assign(static_cast<std::size_t>(kk.npos), 1.0);
    s.signs.resize(static_cast<std::size_t>(k - 2 * kk.pairs), -1.0);
    out.push_back(std::move(s));
  }
  return out;
}

Eigen::VectorXd random_params(const Shape& s, std::mt19937_64& rng) {
  std::normal_distribution<double> g(0.0, 0.7);
  std::uniform_real_distribution<double> u(-1.5, 1.5);
  Eigen::VectorXd p(s.dim());
  Eigen::Index k = 0;
  for (std::size_t i = 0; i < s.signs.size(); ++i) p(k++) = g(rng);
  for (int j = 0; j < s.pairs; ++j) {
    p(k++) = u(rng);
    p(k++) = g(rng) + 0.3;
  }
  return p;
}

// Phase 1: continuation in p, keeping the best iterate by grid max.
void descend(const Problem& prob, StartResult& sr, double penalty, double stop) {
  double best = prob.grid_max(make_rho(sr.shape, sr.params, prob.opts.fixed_poles));
  Eigen::VectorXd x = sr.params;
  for (double p = 2.0; p <= 256.0; p *= 2.0) {
    if (best <= stop) break;
    PNormFunctor fun{&prob, &sr.shape, p, std::max(best, 1e-300), penalty};
    Eigen::NumericalDiff<PNormFunctor, Eigen::Central> nd(fun, 1e-7);
    Eigen::LevenbergMarquardt<Eigen::NumericalDiff<PNormFunctor, Eigen::Central>> lm(nd);
    lm.parameters.maxfev = 400 * (sr.shape.dim() + 1);
    lm.parameters.xtol = 1e-14;
    lm.parameters.ftol = 1e-14;
    lm.minimize(x);
    const double now = prob.grid_max(make_rho(sr.shape, x, prob.opts.fixed_poles));
    if (now < best) {
      best = now;
      sr.params = x;
    } else {
      x = sr.params;
    }
  }
  sr.error = best;
}

bool drifted(const LogDerivative& rho) {
  for (const cplx& z : rho.pair_poles())
    if (std::abs(z) <= 1.0 + 1e-6) return true;
  return false;
}

double refined_error(const Problem& prob, const Shape& shape, const Eigen::VectorXd& params, int grid) {
  const LogDerivative rho = make_rho(shape, params, prob.opts.fixed_poles);
  if (rho.has_pole_on_segment()) return kBig;
  try {
    return residual_sup(prob.f, rho, prob.opts.weight, grid, prob.opts.tol).value;
  } catch (const EvaluationError&) {
    return kBig;
  }
}

// Phase 2: exchange rounds of the coupled equioscillation Newton solve.
void equioscillate(const Problem& prob, StartResult& sr, double stop) {
  const int need = sr.shape.dim() + 1;
  const int grid = std::max(prob.opts.check_grid, 40 * need);
  sr.error = refined_error(prob, sr.shape, sr.params, grid);
  for (int round = 0; round < 8; ++round) {
    if (sr.error <= stop) return;
    const LogDerivative rho = make_rho(sr.shape, sr.params, prob.opts.fixed_poles);
    std::vector<Extremum> ext;
    try {
      ext = local_extrema([&](double x) { return prob.residual_at(rho, x); }, grid, 1e-13);
    } catch (const EvaluationError&) {
      return;
    }
    const auto set = best_alternating_subset(ext, need);
    if (set.empty()) {
      sr.notes.emplace_back("fewer alternating extrema than parameters + 1; Newton phase skipped");
      return;
    }
    NewtonFunctor fun{&prob, &sr.shape, {}, set.front().value > 0 ? 1.0 : -1.0};
    std::vector<double> free_t;
    for (const Extremum& e : set) {
      const bool end = std::abs(std::abs(e.location) - 1.0) < 1e-9 && weight_value(prob.opts.weight, e.location) > 0.0;
      fun.fixed_t.push_back(end ? (e.location > 0 ? 1.0 : -1.0) : std::numeric_limits<double>::quiet_NaN());
      if (!end) free_t.push_back(e.location);
    }
    double h = 0.0;
    for (const Extremum& e : set) h += std::abs(e.value);
    h /= static_cast<double>(set.size());

    Eigen::VectorXd x(fun.inputs());
    x.head(sr.shape.dim()) = sr.params;
    for (std::size_t i = 0; i < free_t.size(); ++i) x(sr.shape.dim() + static_cast<Eigen::Index>(i)) = free_t[i];
    x(x.size() - 1) = h;

    Eigen::HybridNonLinearSolver<NewtonFunctor> solver(fun);
    solver.parameters.maxfev = 200 * (fun.inputs() + 1);
    solver.parameters.xtol = 1e-15;
    solver.parameters.epsfcn = 1e-10;
    solver.solveNumericalDiff(x);

    const Eigen::VectorXd cand = x.head(sr.shape.dim());
    const double err = refined_error(prob, sr.shape, cand, grid);
    const double prev_err = sr.error;
    if (!(err < prev_err)) return;
    sr.params = cand;
    sr.error = err;
    if (prev_err - err <= 1e-12 * err) return;
  }
}

} // namespace

ApproxResult solve_best_ld(const TargetFunction& f, int n, const SolveOptions& opts) {
  if (n < 1) throw DomainError("solve_best_ld: n must be positive");
  const int nfixed = static_cast<int>(opts.fixed_poles.size());
  if (nfixed > n) throw DomainError("solve_best_ld: more fixed poles than the degree");
  for (double a : opts.fixed_poles)
    if (!(std::abs(a) > 1.0)) throw DomainError("solve_best_ld: fixed poles must lie outside [-1,1]");
  if (opts.starts < 1) throw DomainError("solve_best_ld: at least one start required");
  const int k = n - nfixed;

  Problem prob{f, opts, chebyshev_grid(opts.grid > 0 ? opts.grid : std::max(200, 40 * (n + 2))), {}, {}};
  for (double x : prob.grid) {
    prob.fx.push_back(f(x));
    prob.wx.push_back(weight_value(opts.weight, x));
    if (!std::isfinite(prob.fx.back())) throw DomainError("solve_best_ld: target is not finite on [-1,1]");
  }
  double fscale = 1.0;
  for (double v : prob.fx) fscale = std::max(fscale, std::abs(v));
  const double stop = 1e-14 * fscale;

  std::vector<std::string> diagnostics;
  std::optional<StartResult> best;
  int best_index = -1;

  if (k == 0) {
    StartResult sr;
    sr.params.resize(0);
    sr.error = prob.grid_max(make_rho(sr.shape, sr.params, opts.fixed_poles));
    best = sr;
    best_index = 0;
  }

  const std::vector<Shape> shapes = all_shapes(k);
  for (int s = 0; s < opts.starts && k > 0; ++s) {
    std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                      static_cast<std::uint32_t>(s)};
    std::mt19937_64 rng(seq);
    StartResult sr;
    sr.shape = shapes[static_cast<std::size_t>(s) % shapes.size()];
    sr.params = random_params(sr.shape, rng);

    descend(prob, sr, 0.0, stop);
    if (drifted(make_rho(sr.shape, sr.params, opts.fixed_poles))) {
      diagnostics.push_back("start " + std::to_string(s) + ": pole drifted into the unit disk; restarting with penalty");
      sr.params = random_params(sr.shape, rng);
      descend(prob, sr, 1e3, stop);
    }
    equioscillate(prob, sr, stop);

    std::ostringstream note;
    note << "start " << s << ": " << sr.shape.signs.size() << " real + " << sr.shape.pairs << " pairs, error "
         << sr.error;
    diagnostics.push_back(note.str());
    for (const auto& m : sr.notes) diagnostics.push_back("start " + std::to_string(s) + ": " + m);
    if (!best || sr.error < best->error) {
      best = sr;
      best_index = s;
    }
  }

  const LogDerivative rho = make_rho(best->shape, best->params, opts.fixed_poles);
  ApproxResult res{rho, 0.0, 0.0, {}, 0.0, false, 1.0, -1, {}, {}};
  res.best_start = best_index;
  res.diagnostics = std::move(diagnostics);
  const Extremum sup = residual_sup(f, rho, opts.weight, std::max(opts.check_grid, 40 * (k + 1)), opts.tol);
  res.error = sup.value;
  res.location = sup.location;

  CertifyOptions co;
  co.alternance_rel = opts.alternance_rel;
  co.pole_separation = opts.pole_separation;
  co.weight = opts.weight;
  co.fixed_poles = nfixed;
  co.grid = opts.check_grid;
  Certificate cert = certify_optimality(f, rho, co);
  res.certified = cert.certified;
  res.reasons = std::move(cert.reasons);
  res.alternance = std::move(cert.alternance);
  try {
    res.dvp_lower = std::min(dvp_lower_bound(f, rho, opts.weight, nfixed, opts.check_grid), res.error);
  } catch (const NotApplicable&) {
    res.dvp_lower = 0.0;
    res.diagnostics.emplace_back("dvp lower bound not applicable: too few alternating extrema");
  }
  res.gap = res.error > 0.0 ? (res.error - res.dvp_lower) / res.error : 0.0;
  if (!res.certified) res.diagnostics.emplace_back("result is heuristic (not certified)");
  return res;
}

} // namespace simplefrac
