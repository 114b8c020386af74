#include "simplefrac/config.hpp"

#include <fstream>
#include <istream>
#include <map>
#include <stdexcept>
#include <string>

namespace simplefrac {

const Tolerances& default_tolerances() {
  static const Tolerances defaults{};
  return defaults;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& key, const std::string& text) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used != text.size() || text.empty()) throw std::invalid_argument("config: bad value for " + key + ": " + text);
  return v;
}

} // namespace

Tolerances parse_tolerances(std::istream& in, Tolerances base) {
  const std::map<std::string, double Tolerances::*> doubles{
      {"ellipse_on", &Tolerances::ellipse_on},
      {"pole_proximity", &Tolerances::pole_proximity},
      {"conjugate_match", &Tolerances::conjugate_match},
      {"solve_residual", &Tolerances::solve_residual},
      {"sup_refine", &Tolerances::sup_refine},
      {"root_residual", &Tolerances::root_residual},
      {"alternance_rel", &Tolerances::alternance_rel},
      {"pole_separation", &Tolerances::pole_separation},
      {"borchardt", &Tolerances::borchardt},
      {"komarov", &Tolerances::komarov},
  };
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config: line " + std::to_string(lineno) + " is not key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "grid_per_degree") {
      const double v = parse_double(key, value);
      if (v < 2 || v != static_cast<int>(v)) throw std::invalid_argument("config: grid_per_degree must be an integer >= 2");
      base.grid_per_degree = static_cast<int>(v);
      continue;
    }
    const auto it = doubles.find(key);
    if (it == doubles.end()) throw std::invalid_argument("config: unknown key " + key);
    const double v = parse_double(key, value);
    if (!(v > 0.0)) throw std::invalid_argument("config: " + key + " must be positive");
    base.*(it->second) = v;
  }
  return base;
}

Tolerances load_tolerances(const std::string& path, Tolerances base) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("config: cannot open " + path);
  return parse_tolerances(in, base);
}

} // namespace simplefrac
