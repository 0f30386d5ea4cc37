#include "stirap/scenario.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace stirap {

PulseSchedule ScenarioConfig::schedule() const {
  if (is_tripod(variant))
    return PulseSchedule::make_tripod(omega0, k1, k2, tp, td1, td2, width);
  return PulseSchedule::make_lambda(omega0, tp, td1, width);
}

SystemParams ScenarioConfig::params() const {
  SystemParams p;
  p.variant = variant;
  p.gamma = gamma;
  p.delta = delta;
  return p;
}

CVec ScenarioConfig::initial_state() const {
  const int n = dimension(variant);
  CVec psi(n);
  if (initial.empty()) {
    psi[0] = 1.0;
    return psi;
  }
  if (static_cast<int>(initial.size()) != n)
    throw ConfigError("initial state has wrong dimension for the variant");
  for (int i = 0; i < n; ++i) psi[i] = initial[i];
  return psi;
}

void ScenarioConfig::validate() const {
  params().validate();
  schedule().validate();
  if (!(t1 > t0)) throw ConfigError("window must have t_end > t0");
  if (step < 0.0) throw ConfigError("step must be positive");
  if (samples_per_unit <= 0.0) throw ConfigError("samples_per_unit must be positive");
  const double n = total_norm(variant, initial_state());
  if (std::abs(n - 1.0) > 1e-12)
    throw ConfigError("initial state norm must equal 1 (got " + std::to_string(n) + ")");
  for (ReductionLevel level : levels) {
    if (level == ReductionLevel::MinusExcitedAndBright && is_nonlinear(variant))
      throw ConfigError("bright-state elimination is not defined for nonlinear variants");
    if (level != ReductionLevel::Full && gamma == 0.0 && delta == 0.0)
      throw ConfigError("adiabatic elimination needs gamma > 0 or delta != 0");
  }
}

namespace {

ScenarioConfig base_lin_lambda() {
  ScenarioConfig c;
  c.variant = Variant::LinearLambda;
  c.omega0 = 10.0;
  c.tp = 3.8;
  c.td1 = 3.0;
  c.width = 1.0;
  c.gamma = 2.0;
  c.t0 = 0.0;
  c.t1 = 8.0;
  c.levels = {ReductionLevel::Full, ReductionLevel::MinusExcited,
              ReductionLevel::MinusExcitedAndBright};
  return c;
}

ScenarioConfig base_lin_tripod() {
  ScenarioConfig c;
  c.variant = Variant::LinearTripod;
  c.omega0 = 60.0;
  c.k1 = 0.75;
  c.k2 = 5.0;
  c.tp = 10.7;
  c.td1 = 10.0;
  c.td2 = 8.5;
  c.width = 1.0;
  c.gamma = 2.0;
  c.t0 = 0.0;
  c.t1 = 20.0;
  c.levels = {ReductionLevel::Full, ReductionLevel::MinusExcited,
              ReductionLevel::MinusExcitedAndBright};
  return c;
}

ScenarioConfig base_nl_lambda() {
  ScenarioConfig c = base_lin_lambda();
  c.variant = Variant::NonlinearLambda;
  c.omega0 = 300.0;
  c.step = 1.0 / 8000.0;  // meets the step-halving contract at this amplitude
  c.levels = {ReductionLevel::Full, ReductionLevel::MinusExcited};
  return c;
}

ScenarioConfig base_nl_tripod() {
  ScenarioConfig c = base_lin_tripod();
  c.variant = Variant::NonlinearTripod;
  c.levels = {ReductionLevel::Full, ReductionLevel::MinusExcited};
  return c;
}

}  // namespace

ScenarioConfig preset(const std::string& name) {
  ScenarioConfig c;
  if (name == "fig2") {
    c = base_lin_lambda();
  } else if (name == "fig4" || name == "fig5") {
    c = base_lin_tripod();
  } else if (name == "fig6" || name == "fig7" || name == "fig8") {
    c = base_nl_lambda();
  } else if (name == "fig9" || name == "fig10" || name == "fig11") {
    c = base_nl_tripod();
  } else if (name == "fig12") {
    c = base_nl_tripod();
    c.tp = 11.5;
  } else {
    throw ConfigError("unknown preset: " + name);
  }
  c.name = name;
  c.validate();
  return c;
}

std::vector<std::string> preset_names() {
  return {"fig2", "fig4", "fig5", "fig6", "fig7", "fig8", "fig9", "fig10", "fig11", "fig12"};
}

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double to_double(const std::string& key, const std::string& value) {
  try {
    size_t pos = 0;
    const double x = std::stod(value, &pos);
    if (pos != value.size()) throw std::invalid_argument(value);
    return x;
  } catch (const std::exception&) {
    throw ConfigError("config key '" + key + "': not a number: '" + value + "'");
  }
}

Variant parse_variant(const std::string& v) {
  if (v == "linear-lambda") return Variant::LinearLambda;
  if (v == "linear-tripod") return Variant::LinearTripod;
  if (v == "nonlinear-lambda") return Variant::NonlinearLambda;
  if (v == "nonlinear-tripod") return Variant::NonlinearTripod;
  throw ConfigError("unknown variant: " + v);
}

}  // namespace

std::vector<ReductionLevel> parse_levels(const std::string& csv) {
  std::vector<ReductionLevel> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (item == "full") out.push_back(ReductionLevel::Full);
    else if (item == "minus-excited") out.push_back(ReductionLevel::MinusExcited);
    else if (item == "minus-bright") out.push_back(ReductionLevel::MinusExcitedAndBright);
    else if (!item.empty()) throw ConfigError("unknown reduction level: " + item);
  }
  if (out.empty()) throw ConfigError("no reduction levels given");
  return out;
}

ScenarioConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot open config file: " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw ConfigError(path + ":" + std::to_string(lineno) + ": expected key = value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }

  ScenarioConfig c;
  c.name = "custom";
  if (auto it = kv.find("preset"); it != kv.end()) {
    c = preset(it->second);
    kv.erase(it);
  }
  for (const auto& [key, value] : kv) {
    if (key == "variant") c.variant = parse_variant(value);
    else if (key == "name") c.name = value;
    else if (key == "omega0") c.omega0 = to_double(key, value);
    else if (key == "k1") c.k1 = to_double(key, value);
    else if (key == "k2") c.k2 = to_double(key, value);
    else if (key == "tp") c.tp = to_double(key, value);
    else if (key == "td" || key == "td1") c.td1 = to_double(key, value);
    else if (key == "td2") c.td2 = to_double(key, value);
    else if (key == "width") c.width = to_double(key, value);
    else if (key == "gamma") c.gamma = to_double(key, value);
    else if (key == "delta") c.delta = to_double(key, value);
    else if (key == "t0") c.t0 = to_double(key, value);
    else if (key == "t_end") c.t1 = to_double(key, value);
    else if (key == "step") c.step = to_double(key, value);
    else if (key == "samples_per_unit") c.samples_per_unit = to_double(key, value);
    else if (key == "eigen_samples") c.eigen_samples = static_cast<int>(to_double(key, value));
    else if (key == "levels") c.levels = parse_levels(value);
    else if (key == "darkstate_mode") {
      if (value == "manifold") c.dark_mode = DarkStateMode::Manifold;
      else if (value == "substitution") c.dark_mode = DarkStateMode::Substitution;
      else throw ConfigError("darkstate_mode must be manifold or substitution");
    } else if (key == "coupling_only_2d") {
      c.coupling_only_2d = (value == "true" || value == "1");
    } else if (key == "full_window_reduced") {
      c.full_window_reduced = (value == "true" || value == "1");
    } else if (key == "initial") {
      c.initial.clear();
      std::stringstream ss(value);
      std::string x;
      while (std::getline(ss, x, ',')) c.initial.push_back(to_double(key, trim(x)));
    } else {
      throw ConfigError("unknown config key: " + key);
    }
  }
  c.validate();
  return c;
}

ScenarioConfig resolve_scenario(const std::string& name_or_path) {
  for (const std::string& p : preset_names())
    if (p == name_or_path) return preset(name_or_path);
  std::ifstream probe(name_or_path);
  if (!probe)
    throw ConfigError("'" + name_or_path +
                      "' is neither a built-in preset nor a readable config file");
  return load_config_file(name_or_path);
}

}  // namespace stirap
