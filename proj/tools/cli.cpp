#include "cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <random>
#include <sstream>
#include <string_view>

#include <CLI11.hpp>
#include <json.hpp>
#include <unsupported/Eigen/Splines>

#include "simplefrac/bernstein_bounds.hpp"
#include "simplefrac/cauchy_borchardt.hpp"
#include "simplefrac/cheb_core.hpp"
#include "simplefrac/config.hpp"
#include "simplefrac/errors.hpp"
#include "simplefrac/extremal_fractions.hpp"
#include "simplefrac/minimax_solver.hpp"

namespace simplefrac::cli {

namespace {

using json = nlohmann::json;

constexpr const char* kSchemaVersion = "1";

// ---------------------------------------------------------------------------
// Argument parsing

double parse_real(std::string_view s) {
  while (!s.empty() && s.front() == '+') s.remove_prefix(1);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
    throw std::invalid_argument("not a finite number: '" + std::string(s) + "'");
  return v;
}

// "2", "-0.5", "0.3+1.7i", "0.3-1.7i", "1.7i", "-i".
cplx parse_complex(std::string s) {
  if (s.empty()) throw std::invalid_argument("empty complex number");
  const char last = s.back();
  if (last != 'i' && last != 'j') return {parse_real(s), 0.0};
  s.pop_back();
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;)
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != 'e' && s[k - 1] != 'E') {
      split = k;
      break;
    }
  const auto imag = [](const std::string& t) {
    if (t.empty() || t == "+") return 1.0;
    if (t == "-") return -1.0;
    return parse_real(t);
  };
  if (split == std::string::npos) return {0.0, imag(s)};
  return {parse_real(s.substr(0, split)), imag(s.substr(split))};
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::vector<std::string> split_tokens(const std::string& text) {
  std::vector<std::string> out;
  std::string cur;
  for (char ch : text) {
    if (ch == ',' || ch == ';' || std::isspace(static_cast<unsigned char>(ch))) {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(ch);
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

// An inline list, or the name of a file holding one.
std::vector<std::string> list_argument(const std::string& arg) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(arg, ec)) return split_tokens(read_file(arg));
  return split_tokens(arg);
}

std::vector<double> parse_reals(const std::string& arg) {
  std::vector<double> out;
  for (const auto& t : list_argument(arg)) out.push_back(parse_real(t));
  return out;
}

std::vector<cplx> parse_complexes(const std::string& arg) {
  std::vector<cplx> out;
  for (const auto& t : list_argument(arg)) out.push_back(parse_complex(t));
  return out;
}

// ---------------------------------------------------------------------------
// Targets

// Piecewise-cubic interpolant through (x_i, y_i) covering [-1,1].
class SampledFunction {
public:
  explicit SampledFunction(const std::string& path) {
    std::istringstream in(read_file(path));
    std::string line;
    std::vector<double> xs, ys;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const auto tok = split_tokens(line);
      if (tok.empty() || tok[0][0] == '#') continue;
      if (tok.size() < 2) throw std::invalid_argument(path + ": expected x,y rows");
      double x = 0.0, y = 0.0;
      try {
        x = parse_real(tok[0]);
        y = parse_real(tok[1]);
      } catch (const std::invalid_argument&) {
        if (xs.empty() && ys.empty()) continue; // header
        throw;
      }
      xs.push_back(x);
      ys.push_back(y);
    }
    if (xs.size() < 2) throw std::invalid_argument(path + ": need at least 2 rows");
    for (std::size_t i = 1; i < xs.size(); ++i)
      if (!(xs[i] > xs[i - 1])) throw std::invalid_argument(path + ": x must be strictly increasing");
    if (xs.front() < -1.0 || xs.back() > 1.0) throw std::invalid_argument(path + ": x must lie in [-1,1]");
    if (xs.front() != -1.0 || xs.back() != 1.0) throw std::invalid_argument(path + ": samples must span [-1,1]");

    const auto m = static_cast<Eigen::Index>(xs.size());
    Eigen::Matrix<double, 1, Eigen::Dynamic> pts(1, m);
    Eigen::Array<double, 1, Eigen::Dynamic> knots(1, m);
    for (Eigen::Index i = 0; i < m; ++i) {
      pts(0, i) = ys[static_cast<std::size_t>(i)];
      knots(0, i) = 0.5 * (xs[static_cast<std::size_t>(i)] + 1.0);
    }
    const Eigen::DenseIndex degree = std::min<Eigen::DenseIndex>(3, m - 1);
    spline_ = Eigen::SplineFitting<Spline>::Interpolate(pts, degree, knots);
    rows_ = xs.size();
  }

  double operator()(double x) const { return spline_(std::clamp(0.5 * (x + 1.0), 0.0, 1.0))(0); }
  std::size_t rows() const { return rows_; }

private:
  using Spline = Eigen::Spline<double, 1>;
  Spline spline_;
  std::size_t rows_ = 0;
};

// "zero", or ';'-separated terms: ld:<poles>, T<k>[:c], U<k>[:c], const:c.
TargetFunction builtin_target(const std::string& spec) {
  std::vector<RealFunction> terms;
  std::stringstream ss(spec);
  std::string term;
  while (std::getline(ss, term, ';')) {
    if (term.empty()) continue;
    const auto colon = term.find(':');
    const std::string head = term.substr(0, colon);
    const std::string arg = colon == std::string::npos ? "" : term.substr(colon + 1);
    if (head == "zero") {
      terms.emplace_back([](double) { return 0.0; });
    } else if (head == "ld") {
      std::vector<cplx> poles;
      for (const auto& t : split_tokens(arg)) poles.push_back(parse_complex(t));
      const LogDerivative rho(poles);
      if (rho.has_pole_on_segment()) throw DomainError("target '" + term + "': pole on [-1,1]");
      terms.emplace_back([rho](double x) { return eval_ld(rho, x); });
    } else if (head == "const") {
      const double c = parse_real(arg);
      terms.emplace_back([c](double) { return c; });
    } else if (!head.empty() && (head[0] == 'T' || head[0] == 'U')) {
      int k = 0;
      const auto [ptr, ec] = std::from_chars(head.data() + 1, head.data() + head.size(), k);
      if (ec != std::errc() || ptr != head.data() + head.size() || k < 0)
        throw std::invalid_argument("bad Chebyshev term '" + term + "'");
      const double c = arg.empty() ? 1.0 : parse_real(arg);
      const ChebKind kind = head[0] == 'T' ? ChebKind::First : ChebKind::Second;
      terms.emplace_back([c, k, kind](double x) { return c * eval_cheb(kind, k, x); });
    } else {
      throw std::invalid_argument("unknown target term '" + term + "'");
    }
  }
  if (terms.empty()) throw std::invalid_argument("empty target");
  return {[terms](double x) {
            double s = 0.0;
            for (const auto& t : terms) s += t(x);
            return s;
          },
          spec};
}

struct ParsedTarget {
  TargetFunction f;
  bool sampled = false;
  std::size_t rows = 0;
};

ParsedTarget parse_target(const std::string& spec) {
  std::error_code ec;
  if (std::filesystem::is_regular_file(spec, ec)) {
    auto s = std::make_shared<SampledFunction>(spec);
    return {{[s](double x) { return (*s)(x); }, "csv:" + spec}, true, s->rows()};
  }
  return {builtin_target(spec), false, 0};
}

// ---------------------------------------------------------------------------
// Reports

// Adding +0.0 turns -0 into 0.
json pair_json(const cplx& z) { return json::array({z.real() + 0.0, z.imag() + 0.0}); }

json poles_json(const std::vector<cplx>& zs) {
  json a = json::array();
  for (const cplx& z : zs) a.push_back(pair_json(z));
  return a;
}

struct Report {
  std::string command;
  json inputs = json::object();
  json outputs = json::object();
  json diagnostics = json::array();

  void note(const std::string& tag, const std::string& message) {
    diagnostics.push_back({{"tag", tag}, {"message", message}});
  }

  json to_json() const {
    return {{"command", command},
            {"inputs", inputs},
            {"outputs", outputs},
            {"diagnostics", diagnostics},
            {"schema_version", kSchemaVersion}};
  }
};

std::string fmt_double(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", digits, v + 0.0);
  return buf;
}

std::string scalar_text(const json& j, int digits) {
  switch (j.type()) {
  case json::value_t::number_float: return fmt_double(j.get<double>(), digits);
  case json::value_t::number_integer: return std::to_string(j.get<long long>());
  case json::value_t::number_unsigned: return std::to_string(j.get<unsigned long long>());
  case json::value_t::boolean: return j.get<bool>() ? "true" : "false";
  case json::value_t::string: return j.get<std::string>();
  case json::value_t::null: return "null";
  default: return j.dump();
  }
}

bool has_object(const json& j) {
  if (j.is_object()) return true;
  if (j.is_array())
    for (const auto& e : j)
      if (has_object(e)) return true;
  return false;
}

std::string inline_text(const json& j, int digits) {
  if (!j.is_array()) return scalar_text(j, digits);
  std::string s = "[";
  for (std::size_t i = 0; i < j.size(); ++i) {
    if (i) s += ", ";
    s += inline_text(j[i], digits);
  }
  return s + "]";
}

// Leaves as (dotted key, text). `compact` keeps object-free arrays on one line.
void flatten(const json& j, const std::string& key, int digits, bool compact,
             std::vector<std::pair<std::string, std::string>>& rows) {
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) flatten(v, key.empty() ? k : key + "." + k, digits, compact, rows);
  } else if (j.is_array() && (!compact || has_object(j))) {
    for (std::size_t i = 0; i < j.size(); ++i)
      flatten(j[i], key + "[" + std::to_string(i) + "]", digits, compact, rows);
  } else {
    rows.emplace_back(key, inline_text(j, digits));
  }
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char c : s) {
    if (c == '"') q += '"';
    q += c;
  }
  return q + "\"";
}

void emit(const Report& r, const std::string& format, std::ostream& out) {
  const json j = r.to_json();
  if (format == "json") {
    out << j.dump(2) << "\n";
    return;
  }
  std::vector<std::pair<std::string, std::string>> rows;
  if (format == "csv") {
    flatten(j, "", 17, false, rows);
    out << "key,value\n";
    for (const auto& [k, v] : rows) out << csv_field(k) << "," << csv_field(v) << "\n";
    return;
  }
  out << r.command << "\n";
  for (const char* section : {"inputs", "outputs"}) {
    rows.clear();
    flatten(j[section], "", 7, true, rows);
    out << section << ":\n";
    for (const auto& [k, v] : rows) out << "  " << k << ": " << v << "\n";
  }
  if (!r.diagnostics.empty()) out << "diagnostics:\n";
  for (const auto& d : r.diagnostics)
    out << "  [" << d["tag"].get<std::string>() << "] " << d["message"].get<std::string>() << "\n";
}

void write_samples(std::ostream& out, const std::vector<double>& xs, const std::vector<double>& values,
                   const std::vector<double>* weighted) {
  out << (weighted ? "x,value,weight_value\n" : "x,value\n");
  for (std::size_t i = 0; i < xs.size(); ++i) {
    out << fmt_double(xs[i], 17) << "," << fmt_double(values[i], 17);
    if (weighted) out << "," << fmt_double((*weighted)[i], 17);
    out << "\n";
  }
}

// ---------------------------------------------------------------------------
// Subcommands

struct Common {
  std::string format = "human";
};

struct ExtremalOpts {
  Common c;
  int n = 0;
  double a = 0.0;
  bool weighted = false;
  bool force = false;
  std::optional<double> tol;
};

json annulus_json(const PoleAnnulusReport& rep) {
  json j{{"t", rep.t},
         {"all_in_closure_ea", rep.all_in_closure_ea},
         {"residuals_ea", rep.residuals_ea},
         {"min_modulus", rep.min_modulus},
         {"all_outside_unit_disk", rep.all_outside_unit_disk}};
  j["all_outside_et"] = rep.all_outside_et ? json(*rep.all_outside_et) : json(nullptr);
  j["residuals_et"] = rep.residuals_et;
  return j;
}

int candidate_report(const FixedPoleClass& cls, bool force, double sup_tol, const Tolerances& tol, Report& r) {
  const LogDerivative rho = build_candidate_unweighted(cls, tol);
  const NormEstimate sup = sup_norm(rho, sup_tol, tol.grid_per_degree);
  r.outputs["poles"] = poles_json(rho.poles());
  r.outputs["generator_chebyshev"] = rho.generator()->coeffs();
  r.outputs["sup_norm"] = sup.value;
  r.outputs["sup_location"] = sup.location;
  const LambdaBounds lam = lambda_bounds(cls);
  r.outputs["lambda_lower"] = lam.lower;
  r.outputs["lambda_upper"] = lam.upper;
  r.outputs["annulus"] = annulus_json(verify_pole_annulus(cls, rho));
  if (cls.a > unweighted_theorem_threshold(cls.n)) {
    const DvpBracket b = dvp_bracket(cls, tol);
    r.outputs["dvp_bracket"] = {{"lower", b.lower},   {"upper", b.upper},   {"ratio", b.ratio},
                                {"points", b.points}, {"values", b.values}, {"alternates", b.alternates}};
  } else if (force) {
    r.note("range", "a <= sqrt(2) (3 sqrt n)^(1/n): bracket not computed");
  } else {
    throw OutOfTheoremRange("requires a > sqrt(2) (3 sqrt n)^(1/n) for the bracket (use --force)");
  }
  return Ok;
}

int cmd_extremal(const ExtremalOpts& o, const Tolerances& tol, Report& r) {
  r.inputs = {{"n", o.n}, {"a", o.a}, {"weighted", o.weighted}, {"force", o.force}};
  const double sup_tol = o.tol.value_or(tol.sup_refine);
  r.inputs["tol"] = sup_tol;
  const FixedPoleClass cls(o.n, o.a);
  if (!o.weighted) return candidate_report(cls, o.force, sup_tol, tol, r);

  const LogDerivative rho = build_extremal_weighted(cls, o.force ? RangePolicy::Permissive : RangePolicy::Strict);
  const double closed = extremal_weighted_norm(cls);
  const NormEstimate measured = weighted_sup_norm(rho, sup_tol, tol.grid_per_degree);
  const WeightedAlternance alt = alternance_points_weighted(cls);
  const EllipseParam<double> ea(o.a);
  std::vector<double> residuals;
  bool on = true;
  for (const cplx& z : rho.poles()) {
    residuals.push_back(ea.residual(z));
    on = on && std::abs(residuals.back()) <= tol.ellipse_on;
  }
  r.outputs["poles"] = poles_json(rho.poles());
  r.outputs["norm"] = closed;
  r.outputs["norm_measured"] = measured.value;
  r.outputs["norm_location"] = measured.location;
  r.outputs["alternance"] = {{"points", alt.alternance.points},
                             {"values", alt.alternance.values},
                             {"level", alt.alternance.level},
                             {"sign_pattern_ok", alt.alternance.sign_pattern_ok}};
  r.outputs["zeros"] = alt.zeros;
  r.outputs["ellipse_residuals"] = residuals;
  r.outputs["all_on_ellipse"] = on;
  if (o.force && !(o.a > weighted_theorem_threshold()))
    r.note("range", "a <= sqrt(2): the fraction is built but its optimality is not asserted");
  const double rel = std::abs(measured.value - closed) / closed;
  if (rel > 1e-9) {
    r.note("check", "measured norm differs from the closed form by " + fmt_double(rel, 3));
    return Failed;
  }
  return on ? Ok : Failed;
}

struct BorchardtOpts {
  Common c;
  std::optional<int> n;
  std::uint64_t seed = 1;
  int trials = 1;
  std::string nodes, poles;
  std::optional<double> tol;
};

int cmd_borchardt(const BorchardtOpts& o, const Tolerances& tol, Report& r) {
  const double limit = o.tol.value_or(tol.borchardt);
  std::vector<CauchyPair<double>> pairs;
  if (!o.nodes.empty() || !o.poles.empty()) {
    if (o.nodes.empty() || o.poles.empty()) throw std::invalid_argument("--nodes and --poles go together");
    auto c = parse_reals(o.nodes);
    auto z = parse_complexes(o.poles);
    if (o.n && *o.n != static_cast<int>(c.size())) throw std::invalid_argument("--n does not match the node count");
    if (static_cast<int>(c.size()) > kMaxPermanentSize) throw SizeError("borchardt: n > 20");
    r.inputs = {{"nodes", c}, {"poles", poles_json(z)}};
    pairs.emplace_back(std::move(c), std::move(z));
  } else {
    if (!o.n) throw std::invalid_argument("--n is required without --nodes/--poles");
    if (*o.n < 1) throw DomainError("borchardt: n must be positive");
    if (*o.n > kMaxPermanentSize) throw SizeError("borchardt: n > 20");
    if (o.trials < 1) throw DomainError("borchardt: --trials must be positive");
    r.inputs = {{"n", *o.n}, {"seed", o.seed}, {"trials", o.trials}};
    std::mt19937_64 rng(o.seed);
    for (int t = 0; t < o.trials; ++t) pairs.push_back(random_lemma_pair<double>(*o.n, rng));
  }
  r.inputs["tol"] = limit;

  json trials = json::array();
  double worst = 0.0;
  double min_det = INFINITY;
  for (const auto& p : pairs) {
    const auto rep = borchardt_check(p);
    const auto w = nonvanishing_witness(p);
    worst = std::max(worst, rep.rel_residual);
    min_det = std::min(min_det, w.abs_det_A);
    trials.push_back({{"lhs", pair_json(rep.lhs)},
                      {"rhs", pair_json(rep.rhs)},
                      {"residual", rep.rel_residual},
                      {"abs_det_A", w.abs_det_A},
                      {"lemma_conditions", w.conditions_ok}});
  }
  r.outputs["trials"] = trials;
  r.outputs["max_residual"] = worst;
  r.outputs["min_abs_det_A"] = min_det;
  r.outputs["passed"] = worst <= limit;
  return worst <= limit ? Ok : Failed;
}

struct ApproxOpts {
  Common c;
  std::string target;
  int n = 0;
  std::uint64_t seed = 1;
  int starts = 8;
  bool weighted = false;
  std::vector<double> fixed;
  int grid = 2001;
  bool require_certificate = false;
};

int cmd_approx(const ApproxOpts& o, const Tolerances& tol, Report& r) {
  r.inputs = {{"target", o.target}, {"n", o.n},        {"seed", o.seed},         {"starts", o.starts},
              {"weighted", o.weighted}, {"fixed_poles", o.fixed}, {"grid", o.grid},
              {"require_certificate", o.require_certificate}};
  const ParsedTarget t = parse_target(o.target);
  SolveOptions so;
  so.seed = o.seed;
  so.starts = o.starts;
  so.weight = o.weighted ? Weight::Chebyshev : Weight::None;
  so.fixed_poles = o.fixed;
  so.check_grid = o.grid;
  so.tol = tol.sup_refine;
  so.alternance_rel = tol.alternance_rel;
  so.pole_separation = tol.pole_separation;
  const ApproxResult res = solve_best_ld(t.f, o.n, so);

  r.outputs["poles"] = poles_json(res.rho.poles());
  r.outputs["error"] = res.error;
  r.outputs["location"] = res.location;
  r.outputs["certified"] = res.certified;
  r.outputs["gap"] = res.gap;
  r.outputs["dvp_lower"] = res.dvp_lower;
  r.outputs["best_start"] = res.best_start;
  r.outputs["alternance"] = {{"points", res.alternance.points},
                             {"values", res.alternance.values},
                             {"level", res.alternance.level},
                             {"sign_pattern_ok", res.alternance.sign_pattern_ok}};
  r.outputs["reasons"] = res.reasons;
  if (t.sampled)
    r.note("target", "sampled target (" + std::to_string(t.rows) +
                         " rows): the certificate refers to the piecewise-cubic interpolant, not the sampled function");
  for (const auto& d : res.diagnostics) r.note("solver", d);
  if (o.require_certificate && !res.certified) return Uncertified;
  return Ok;
}

struct SampleOpts {
  Common c;
  std::string what;
  int n = 0;
  double a = 0.0;
  bool force = false;
  int grid = 0;
  std::string out;
  std::string target;
  std::string poles;
  bool weighted = false;
};

int cmd_sample(const SampleOpts& o, Report& r, std::ostream& out, bool& report_wanted) {
  r.inputs = {{"what", o.what}, {"grid", o.grid}, {"out", o.out}};
  if (o.grid < 2) throw DomainError("sample: --grid must be at least 2");
  const std::vector<double> xs = chebyshev_grid(o.grid);
  std::vector<double> values, wvalues;
  bool weighted = false;

  if (o.what == "extremal-weighted" || o.what == "candidate") {
    r.inputs["n"] = o.n;
    r.inputs["a"] = o.a;
    const FixedPoleClass cls(o.n, o.a);
    const LogDerivative rho = o.what == "candidate"
                                  ? build_candidate_unweighted(cls)
                                  : build_extremal_weighted(cls, o.force ? RangePolicy::Permissive : RangePolicy::Strict);
    weighted = o.what == "extremal-weighted";
    for (double x : xs) {
      values.push_back(eval_ld(rho, x));
      wvalues.push_back(weighted_value(rho, Weight::Chebyshev, x));
    }
  } else {
    r.inputs["target"] = o.target;
    r.inputs["poles"] = o.poles;
    r.inputs["weighted"] = o.weighted;
    if (o.target.empty() || o.poles.empty()) throw std::invalid_argument("residual sampling needs --target and --poles");
    const ParsedTarget t = parse_target(o.target);
    const LogDerivative rho(parse_complexes(o.poles));
    weighted = o.weighted;
    for (double x : xs) {
      values.push_back(residual_value(t.f, rho, x));
      wvalues.push_back(residual_value(t.f, rho, x, Weight::Chebyshev));
    }
  }

  double vmax = 0.0, wmax = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    vmax = std::max(vmax, std::abs(values[i]));
    wmax = std::max(wmax, std::abs(wvalues[i]));
  }
  if (o.out.empty() || o.out == "-") {
    write_samples(out, xs, values, weighted ? &wvalues : nullptr);
    report_wanted = false;
    return Ok;
  }
  std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
  if (!file) throw std::invalid_argument("cannot write '" + o.out + "'");
  write_samples(file, xs, values, weighted ? &wvalues : nullptr);
  file.close();
  if (!file) throw std::invalid_argument("cannot write '" + o.out + "'");
  r.outputs["rows"] = o.grid;
  r.outputs["max_abs_value"] = vmax;
  if (weighted) r.outputs["max_abs_weight_value"] = wmax;
  r.outputs["path"] = o.out;
  return Ok;
}

struct CandidateOpts {
  Common c;
  int n = 0;
  double a = 0.0;
  bool force = false;
};

int cmd_candidate(const CandidateOpts& o, const Tolerances& tol, Report& r) {
  r.inputs = {{"n", o.n}, {"a", o.a}, {"force", o.force}};
  return candidate_report(FixedPoleClass(o.n, o.a), o.force, tol.sup_refine, tol, r);
}

struct BernsteinOpts {
  Common c;
  int n = 0;
  double a = 0.0;
  std::string witness = "chebyshev";
  std::string roots;
  double lead = 1.0;
  int trials = 0;
  std::uint64_t seed = 1;
  bool force = false;
};

json corollary_json(const CorollaryCheck& c) {
  return {{"lhs_w", c.lhs_w},     {"rhs_w", c.rhs_w},     {"lhs_u", c.lhs_u},
          {"rhs_u", c.rhs_u},     {"min_abs", c.min_abs}, {"min_location", c.min_location},
          {"holds_w", c.holds_w}, {"holds_u", c.holds_u}, {"both_hold", c.both_hold}};
}

int cmd_bernstein(const BernsteinOpts& o, const Tolerances& tol, Report& r) {
  const RangePolicy policy = o.force ? RangePolicy::Permissive : RangePolicy::Strict;
  r.inputs = {{"a", o.a}, {"force", o.force}};
  int status = Ok;
  if (o.trials > 0) {
    r.inputs["n"] = o.n;
    r.inputs["trials"] = o.trials;
    r.inputs["seed"] = o.seed;
    std::mt19937_64 rng(o.seed);
    int failures = 0;
    double worst_w = INFINITY, worst_u = INFINITY;
    for (int t = 0; t < o.trials; ++t) {
      const CorollaryCheck c = check_corollary(random_admissible(o.n, o.a, rng), policy, tol.sup_refine);
      if (!c.both_hold) ++failures;
      worst_w = std::min(worst_w, c.lhs_w / c.rhs_w);
      worst_u = std::min(worst_u, c.lhs_u / c.rhs_u);
    }
    r.outputs["failures"] = failures;
    r.outputs["min_ratio_w"] = worst_w;
    r.outputs["min_ratio_u"] = worst_u;
    status = failures == 0 ? Ok : Failed;
  } else {
    std::optional<RootedPolynomial> p;
    if (!o.roots.empty()) {
      r.inputs["roots"] = o.roots;
      r.inputs["lead"] = o.lead;
      p.emplace(o.a, parse_complexes(o.roots), o.lead);
    } else {
      r.inputs["n"] = o.n;
      r.inputs["witness"] = o.witness;
      if (o.witness == "chebyshev")
        p.emplace(chebyshev_witness(o.n, o.a));
      else
        p.emplace(antiderivative_witness(o.n, o.a));
    }
    const CorollaryCheck c = check_corollary(*p, policy, tol.sup_refine);
    r.outputs["n"] = p->n();
    r.outputs["check"] = corollary_json(c);
    status = c.both_hold ? Ok : Failed;
  }
  const int n = o.roots.empty() ? o.n : static_cast<int>(parse_complexes(o.roots).size()) + 1;
  try {
    const AsymptoticRatios ar = asymptotic_ratios(n, o.a, policy);
    r.outputs["r1"] = ar.r1;
    r.outputs["r2_lower"] = ar.r2_lower ? json(*ar.r2_lower) : json(nullptr);
  } catch (const DomainError& e) {
    r.note("range", std::string("asymptotic ratios: ") + e.what());
  }
  return status;
}

struct KomarovOpts {
  Common c;
  std::string p, q;
  int trials = 0;
  int np = 3, nq = 2;
  std::uint64_t seed = 1;
  int points = 50;
  double clearance = 0.1;
  std::optional<double> tol;
};

int cmd_komarov(const KomarovOpts& o, const Tolerances& tol, Report& r) {
  const double limit = o.tol.value_or(tol.komarov);
  r.inputs = {{"points", o.points}, {"clearance", o.clearance}, {"tol", limit}};
  std::vector<std::pair<std::vector<cplx>, std::vector<cplx>>> sets;
  if (o.trials > 0) {
    r.inputs["trials"] = o.trials;
    r.inputs["np"] = o.np;
    r.inputs["nq"] = o.nq;
    r.inputs["seed"] = o.seed;
    std::mt19937_64 rng(o.seed);
    for (int t = 0; t < o.trials; ++t) {
      auto p = random_conjugate_poles<double>(o.np, rng);
      auto q = random_conjugate_poles<double>(o.nq, rng);
      sets.emplace_back(std::move(p), std::move(q));
    }
  } else {
    if (o.p.empty()) throw std::invalid_argument("--p is required without --trials");
    auto p = parse_complexes(o.p);
    auto q = o.q.empty() ? std::vector<cplx>{} : parse_complexes(o.q);
    r.inputs["p"] = poles_json(p);
    r.inputs["q"] = poles_json(q);
    sets.emplace_back(std::move(p), std::move(q));
  }
  double worst = 0.0;
  json results = json::array();
  for (const auto& [p, q] : sets) {
    const auto d = komarov_coefficients(p, q);
    const auto v = validate_komarov(d, o.points, o.clearance);
    worst = std::max(worst, v.max_residual);
    results.push_back({{"gamma", poles_json(d.gamma)}, {"max_residual", v.max_residual}, {"points", v.points.size()}});
  }
  if (sets.size() == 1) {
    r.outputs["gamma"] = results[0]["gamma"];
    r.outputs["points"] = results[0]["points"];
  } else {
    r.outputs["trials"] = results;
  }
  r.outputs["max_residual"] = worst;
  r.outputs["passed"] = worst <= limit;
  return worst <= limit ? Ok : Failed;
}

void add_format(CLI::App* sub, Common& c) {
  sub->add_option("--format", c.format, "Report format")->check(CLI::IsMember({"json", "csv", "human"}));
}

} // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Extremal logarithmic derivatives, Cauchy/Borchardt determinants and minimax approximation"};
  app.name("simplefrac");
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "key=value tolerance file (default: $SIMPLEFRAC_CONFIG)");

  ExtremalOpts ex;
  auto* s_ex = app.add_subcommand("extremal", "Extremal fraction (--weighted) or unweighted candidate with bounds");
  s_ex->add_option("--n", ex.n, "Degree")->required();
  s_ex->add_option("--a", ex.a, "Fixed real pole a > 1")->required();
  s_ex->add_flag("--weighted", ex.weighted, "Weighted problem (weight sqrt(1-x^2))");
  s_ex->add_flag("--force", ex.force, "Build outside the optimality range");
  s_ex->add_option("--tol", ex.tol, "Sup-norm refinement tolerance");
  add_format(s_ex, ex.c);

  BorchardtOpts bo;
  auto* s_bo = app.add_subcommand("borchardt", "Check det A = det B per B on given or random Cauchy pairs");
  s_bo->add_option("--n", bo.n, "Size (n <= 20)");
  s_bo->add_option("--seed", bo.seed, "Random seed");
  s_bo->add_option("--trials", bo.trials, "Random instances");
  s_bo->add_option("--nodes", bo.nodes, "Real nodes: list or file");
  s_bo->add_option("--poles", bo.poles, "Conjugate-closed poles: list or file");
  s_bo->add_option("--tol", bo.tol, "Relative residual tolerance");
  add_format(s_bo, bo.c);

  ApproxOpts ap;
  auto* s_ap = app.add_subcommand("approx", "Best uniform approximation by a logarithmic derivative");
  s_ap->add_option("--target", ap.target, "Builtin (e.g. 'ld:2,-2;T3:1e-3', 'zero') or x,y CSV file")->required();
  s_ap->add_option("--n", ap.n, "Degree")->required();
  s_ap->add_option("--seed", ap.seed, "Random seed");
  s_ap->add_option("--starts", ap.starts, "Multistart count");
  s_ap->add_flag("--weighted", ap.weighted, "Weighted residual");
  s_ap->add_option("--fixed-pole", ap.fixed, "Fixed real pole (repeatable)");
  s_ap->add_option("--grid", ap.grid, "Check grid size");
  s_ap->add_flag("--require-certificate", ap.require_certificate, "Exit 3 unless certified");
  add_format(s_ap, ap.c);

  SampleOpts sa;
  auto* s_sa = app.add_subcommand("sample", "Plot-ready CSV samples on a Chebyshev grid");
  s_sa->add_option("--what", sa.what, "What to sample")
      ->required()
      ->check(CLI::IsMember({"extremal-weighted", "candidate", "residual"}));
  s_sa->add_option("--n", sa.n, "Degree");
  s_sa->add_option("--a", sa.a, "Fixed pole");
  s_sa->add_flag("--force", sa.force, "Build outside the optimality range");
  s_sa->add_option("--grid", sa.grid, "Number of rows")->required();
  s_sa->add_option("--out", sa.out, "Output file (default stdout)");
  s_sa->add_option("--target", sa.target, "Residual target");
  s_sa->add_option("--poles", sa.poles, "Residual poles");
  s_sa->add_flag("--weighted", sa.weighted, "Add weight_value column for residuals");
  add_format(s_sa, sa.c);

  CandidateOpts ca;
  auto* s_ca = app.add_subcommand("candidate", "Unweighted candidate, pole annulus, lambda bounds and bracket");
  s_ca->add_option("--n", ca.n, "Degree")->required();
  s_ca->add_option("--a", ca.a, "Fixed real pole")->required();
  s_ca->add_flag("--force", ca.force, "Skip the bracket below its range instead of failing");
  add_format(s_ca, ca.c);

  BernsteinOpts be;
  auto* s_be = app.add_subcommand("bernstein", "Check the Markov-Bernstein type bounds");
  s_be->add_option("--n", be.n, "Degree");
  s_be->add_option("--a", be.a, "Distinguished root a")->required();
  s_be->add_option("--witness", be.witness, "Witness polynomial")
      ->check(CLI::IsMember({"chebyshev", "antiderivative"}));
  s_be->add_option("--roots", be.roots, "Cofactor roots instead of a witness: list or file");
  s_be->add_option("--lead", be.lead, "Leading coefficient with --roots");
  s_be->add_option("--trials", be.trials, "Random admissible polynomials");
  s_be->add_option("--seed", be.seed, "Random seed");
  s_be->add_flag("--force", be.force, "Allow n < 4 / small a (weighted bound needs a > sqrt 2)");
  add_format(s_be, be.c);

  KomarovOpts ko;
  auto* s_ko = app.add_subcommand("komarov", "Coefficients gamma_k = q(z_k)/p'(z_k) and identity check");
  s_ko->add_option("--p", ko.p, "Roots of p: list or file");
  s_ko->add_option("--q", ko.q, "Roots of q: list or file");
  s_ko->add_option("--trials", ko.trials, "Random pole sets");
  s_ko->add_option("--np", ko.np, "deg p for random sets");
  s_ko->add_option("--nq", ko.nq, "deg q for random sets");
  s_ko->add_option("--seed", ko.seed, "Random seed");
  s_ko->add_option("--points", ko.points, "Check points");
  s_ko->add_option("--clearance", ko.clearance, "Minimum distance of check points from real poles");
  s_ko->add_option("--tol", ko.tol, "Residual tolerance");
  add_format(s_ko, ko.c);

  try {
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? Ok : Usage;
  }

  try {
    Tolerances tol = default_tolerances();
    if (config_path.empty())
      if (const char* env = std::getenv("SIMPLEFRAC_CONFIG"); env && *env) config_path = env;
    if (!config_path.empty()) tol = load_tolerances(config_path);

    Report r;
    std::string format = "human";
    int code = Ok;
    bool report_wanted = true;
    if (*s_ex) {
      r.command = "extremal";
      format = ex.c.format;
      code = cmd_extremal(ex, tol, r);
    } else if (*s_bo) {
      r.command = "borchardt";
      format = bo.c.format;
      code = cmd_borchardt(bo, tol, r);
    } else if (*s_ap) {
      r.command = "approx";
      format = ap.c.format;
      code = cmd_approx(ap, tol, r);
    } else if (*s_sa) {
      r.command = "sample";
      format = sa.c.format;
      code = cmd_sample(sa, r, out, report_wanted);
    } else if (*s_ca) {
      r.command = "candidate";
      format = ca.c.format;
      code = cmd_candidate(ca, tol, r);
    } else if (*s_be) {
      r.command = "bernstein";
      format = be.c.format;
      code = cmd_bernstein(be, tol, r);
    } else if (*s_ko) {
      r.command = "komarov";
      format = ko.c.format;
      code = cmd_komarov(ko, tol, r);
    }
    if (!config_path.empty()) r.inputs["config"] = config_path;
    if (report_wanted) emit(r, format, out);
    return code;
  } catch (const std::logic_error& e) {
    // DomainError (and OutOfTheoremRange), ConstructionError, SizeError, bad input.
    err << "error: " << e.what() << "\n";
    return Usage;
  } catch (const NotApplicable& e) {
    err << "error: " << e.what() << "\n";
    return Usage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return Failed;
  }
}

} // namespace simplefrac::cli
