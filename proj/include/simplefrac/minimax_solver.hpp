#ifndef SIMPLEFRAC_MINIMAX_SOLVER_HPP
#define SIMPLEFRAC_MINIMAX_SOLVER_HPP

// Best uniform approximation of a continuous f on [-1,1] by logarithmic
// derivatives of degree n, with an alternance certificate.
//
// Certificate: if the poles of rho are pairwise distinct and all satisfy
// |z_k| > 1, then rho is the (unique) best approximation iff f - rho has a
// Chebyshev alternance of n+1 points. Outside those two hypotheses an
// alternance proves nothing and best approximants need not be unique, so the
// solver labels any uncertified result as heuristic.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "simplefrac/grid_search.hpp"
#include "simplefrac/log_derivative.hpp"

namespace simplefrac {

struct TargetFunction {
  RealFunction eval;
  std::string description;

  double operator()(double x) const { return eval(x); }
};

TargetFunction zero_target();
/// f = rho (evaluated through eval_ld).
TargetFunction ld_target(const LogDerivative& rho, std::string description = "ld");

/// w(x) (f(x) - rho(x)).
double residual_value(const TargetFunction& f, const LogDerivative& rho, double x, Weight w = Weight::None);

/// Sup norm of the (weighted) residual.
Extremum residual_sup(const TargetFunction& f, const LogDerivative& rho, Weight w = Weight::None,
                      int grid = 2001, double tol = 1e-12);

/// Local extrema of the residual at level within rel_tol of its sup norm,
/// reduced to the longest sign-alternating run. sign_pattern_ok iff at least
/// min_points survive. A residual that vanishes identically yields an empty
/// report. Throws DomainError when rho has a pole on [-1,1].
AlternanceReport residual_alternance(const TargetFunction& f, const LogDerivative& rho, int min_points,
                                     double rel_tol = 1e-3, Weight w = Weight::None, int grid = 2001);

/// Number of alternance points the criterion asks for: free parameters + 1,
/// i.e. degree - fixed_poles + 1.
int required_alternance_points(const LogDerivative& rho, int fixed_poles = 0);

/// Among sign-alternating subsequences of exactly `count` entries, the one
/// whose smallest magnitude is largest. Empty if none exists.
std::vector<Extremum> best_alternating_subset(const std::vector<Extremum>& extrema, int count);

/// de la Vallee Poussin analogue: min_k |f - rho|(t_k) over the best
/// alternating set of required_alternance_points(rho, fixed_poles) residual
/// extrema. Throws NotApplicable when no such set exists.
double dvp_lower_bound(const TargetFunction& f, const LogDerivative& rho, Weight w = Weight::None,
                       int fixed_poles = 0, int grid = 2001);

struct CertifyOptions {
  double alternance_rel = 1e-3;
  double pole_separation = 1e-9;
  Weight weight = Weight::None;
  int fixed_poles = 0;
  int grid = 2001;
};

struct Certificate {
  bool certified = false;
  std::vector<std::string> reasons; // one entry per failed clause
  AlternanceReport alternance;
};

/// Report-only; never throws for an evaluable target.
Certificate certify_optimality(const TargetFunction& f, const LogDerivative& rho, const CertifyOptions& opts = {});

struct SolveOptions {
  int grid = 0;                    // descent grid; 0 picks max(200, 40 (n + 2))
  int check_grid = 2001;           // grid for sup norms and alternance detection
  int starts = 8;
  std::uint64_t seed = 1;
  double tol = 1e-12;              // sup-norm refinement / convergence tolerance
  Weight weight = Weight::None;
  std::vector<double> fixed_poles; // real poles kept in every candidate
  double alternance_rel = 1e-3;
  double pole_separation = 1e-9;
};

struct ApproxResult {
  LogDerivative rho;
  double error = 0.0;     // sup |w (f - rho)|
  double location = 0.0;  // where it is attained
  AlternanceReport alternance;
  double dvp_lower = 0.0;
  bool certified = false;
  double gap = 1.0;       // (error - dvp_lower) / error
  int best_start = -1;
  std::vector<std::string> reasons;     // failed certificate clauses
  std::vector<std::string> diagnostics; // per-start notes, restarts
};

/// Two-phase multistart solve: p-norm descent with continuation in p, then
/// coupled Newton on the equioscillation system. Start s uses pole topology
/// s mod (number of topologies) and draws its initial poles from
/// (seed, start index), so the first k starts are the same for any
/// `starts >= k` and the result is a deterministic argmin (lowest start
/// index wins ties).
ApproxResult solve_best_ld(const TargetFunction& f, int n, const SolveOptions& opts = {});

} // namespace simplefrac

#endif
