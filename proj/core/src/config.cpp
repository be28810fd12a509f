#include "savmac/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

namespace savmac {

namespace {

std::string trim(const std::string& s) {
  size_t a = 0, b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

double parse_double(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    double d = std::stod(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ValidationError(key, "not a number: '" + v + "'");
  }
}

int parse_int(const std::string& key, const std::string& v) {
  try {
    size_t pos = 0;
    int d = std::stoi(v, &pos);
    if (pos != v.size()) throw std::invalid_argument(v);
    return d;
  } catch (const std::exception&) {
    throw ValidationError(key, "not an integer: '" + v + "'");
  }
}

bool parse_bool(const std::string& key, const std::string& v) {
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  throw ValidationError(key, "not a boolean: '" + v + "'");
}

std::vector<int> parse_levels(const std::string& key, const std::string& v) {
  std::vector<int> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(parse_int(key, item));
  }
  if (out.empty()) throw ValidationError(key, "empty level list");
  return out;
}

}  // namespace

RunConfig preset(ExperimentKind experiment) {
  RunConfig cfg;
  cfg.experiment = experiment;
  switch (experiment) {
    case ExperimentKind::converge:
      cfg.params.mobility = 1e-3;
      cfg.params.lambda = 0.1;
      cfg.params.nu = 0.1;
      cfg.params.epsilon = std::sqrt(0.1);
      cfg.params.beta = 5.0;
      cfg.params.gamma = 1.0;
      cfg.params.dt = 1e-4;
      cfg.params.t_final = 0.02;
      cfg.params.mode = StepMode::decoupled;
      cfg.ic = InitialCondition::trig;
      cfg.levels = {10, 20};
      break;
    case ExperimentKind::square_bubble:
      cfg.params.mobility = 0.002;
      cfg.params.lambda = 0.01;
      cfg.params.nu = 1.0;
      cfg.params.epsilon = 0.01;
      cfg.params.beta = 5.0;
      cfg.params.gamma = 1.0;
      cfg.params.dt = 1e-3;
      cfg.params.t_final = 1.0;
      cfg.params.mode = StepMode::coupled;
      cfg.ic = InitialCondition::square;
      cfg.nx = cfg.ny = 32;
      cfg.bubble_cx = cfg.bubble_cy = 0.5;
      cfg.snapshot_every = 200;
      break;
    case ExperimentKind::buoyant_bubble:
      cfg.params.mobility = 0.01;
      cfg.params.lambda = 0.001;
      cfg.params.nu = 1.0;
      cfg.params.epsilon = 0.01;
      cfg.params.beta = 5.0;
      cfg.params.gamma = 1.0;
      cfg.params.chi = 40.0;
      cfg.params.phi0 = -0.05;
      cfg.params.dt = 5e-4;
      cfg.params.t_final = 1.0;
      cfg.params.mode = StepMode::decoupled;
      cfg.ic = InitialCondition::circle;
      cfg.nx = cfg.ny = 32;
      cfg.bubble_cx = 0.5;
      cfg.bubble_cy = 0.25;
      cfg.snapshot_every = 200;
      break;
    case ExperimentKind::custom:
      break;
  }
  return cfg;
}

void apply_key(RunConfig& cfg, const std::string& key, const std::string& value,
               int line) {
  Params& p = cfg.params;
  if (key == "nx") cfg.nx = parse_int(key, value);
  else if (key == "ny") cfg.ny = parse_int(key, value);
  else if (key == "x_lo") cfg.x_lo = parse_double(key, value);
  else if (key == "x_hi") cfg.x_hi = parse_double(key, value);
  else if (key == "y_lo") cfg.y_lo = parse_double(key, value);
  else if (key == "y_hi") cfg.y_hi = parse_double(key, value);
  else if (key == "mobility") p.mobility = parse_double(key, value);
  else if (key == "lambda") p.lambda = parse_double(key, value);
  else if (key == "nu") p.nu = parse_double(key, value);
  else if (key == "gamma") p.gamma = parse_double(key, value);
  else if (key == "epsilon") p.epsilon = parse_double(key, value);
  else if (key == "beta") p.beta = parse_double(key, value);
  else if (key == "delta") p.delta = parse_double(key, value);
  else if (key == "chi") p.chi = parse_double(key, value);
  else if (key == "phi0") p.phi0 = parse_double(key, value);
  else if (key == "dt") p.dt = parse_double(key, value);
  else if (key == "t_final") p.t_final = parse_double(key, value);
  else if (key == "cg_tol") p.cg_tol = parse_double(key, value);
  else if (key == "picard_tol") p.picard_tol = parse_double(key, value);
  else if (key == "cg_maxit_factor") p.cg_maxit_factor = parse_int(key, value);
  else if (key == "picard_maxit") p.picard_maxit = parse_int(key, value);
  else if (key == "capillary") p.enable_capillary = parse_bool(key, value);
  else if (key == "mode") {
    if (value == "coupled") p.mode = StepMode::coupled;
    else if (value == "decoupled") p.mode = StepMode::decoupled;
    else throw ValidationError(key, "expected coupled|decoupled, got '" + value + "'");
  } else if (key == "ic") {
    if (value == "trig") cfg.ic = InitialCondition::trig;
    else if (value == "square") cfg.ic = InitialCondition::square;
    else if (value == "circle") cfg.ic = InitialCondition::circle;
    else throw ValidationError(key, "expected trig|square|circle, got '" + value + "'");
  } else if (key == "square_side") cfg.square_side = parse_double(key, value);
  else if (key == "bubble_radius") cfg.bubble_radius = parse_double(key, value);
  else if (key == "bubble_cx") cfg.bubble_cx = parse_double(key, value);
  else if (key == "bubble_cy") cfg.bubble_cy = parse_double(key, value);
  else if (key == "out_dir") cfg.out_dir = value;
  else if (key == "snapshot_every") cfg.snapshot_every = parse_int(key, value);
  else if (key == "levels") cfg.levels = parse_levels(key, value);
  else if (key == "full_tables") cfg.full_tables = parse_bool(key, value);
  else if (key == "full_scale") cfg.full_scale = parse_bool(key, value);
  else if (key == "write_vtk") cfg.write_vtk = parse_bool(key, value);
  else if (key == "experiment") {
    // handled by load_config before any other key; reaching here is a misuse
    throw ParseError("key 'experiment' must be handled by the loader", line);
  } else {
    throw ParseError("unknown config key '" + key + "' (line " +
                         std::to_string(line) + ")",
                     line);
  }
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file: " + path);

  // first pass: collect key=value pairs in file order
  std::vector<std::pair<std::string, std::string>> pairs;
  std::vector<int> lines;
  std::string raw;
  int lineno = 0;
  std::string experiment_value;
  while (std::getline(in, raw)) {
    ++lineno;
    std::string s = raw;
    const size_t hash = s.find('#');
    if (hash != std::string::npos) s = s.substr(0, hash);
    s = trim(s);
    if (s.empty()) continue;
    const size_t eq = s.find('=');
    if (eq == std::string::npos) {
      throw ParseError("expected key=value (line " + std::to_string(lineno) + "): '" +
                           trim(raw) + "'",
                       lineno);
    }
    const std::string key = trim(s.substr(0, eq));
    const std::string value = trim(s.substr(eq + 1));
    if (key.empty()) throw ParseError("empty key (line " + std::to_string(lineno) + ")", lineno);
    if (key == "experiment") {
      experiment_value = value;
      continue;
    }
    pairs.emplace_back(key, value);
    lines.push_back(lineno);
  }

  RunConfig cfg;
  if (!experiment_value.empty()) {
    if (experiment_value == "converge") cfg = preset(ExperimentKind::converge);
    else if (experiment_value == "square_bubble") cfg = preset(ExperimentKind::square_bubble);
    else if (experiment_value == "buoyant_bubble") cfg = preset(ExperimentKind::buoyant_bubble);
    else if (experiment_value == "custom") cfg = preset(ExperimentKind::custom);
    else throw ValidationError("experiment",
                               "expected converge|square_bubble|buoyant_bubble|custom, got '" +
                                   experiment_value + "'");
  }
  for (size_t n = 0; n < pairs.size(); ++n) {
    apply_key(cfg, pairs[n].first, pairs[n].second, lines[n]);
  }
  validate(cfg);
  return cfg;
}

void validate(const RunConfig& cfg) {
  const Params& p = cfg.params;
  if (cfg.nx < 2) throw ValidationError("nx", "must be >= 2");
  if (cfg.ny < 2) throw ValidationError("ny", "must be >= 2");
  if (cfg.x_hi <= cfg.x_lo) throw ValidationError("x_hi", "must exceed x_lo");
  if (cfg.y_hi <= cfg.y_lo) throw ValidationError("y_hi", "must exceed y_lo");
  if (p.mobility <= 0) throw ValidationError("mobility", "must be positive");
  if (p.lambda <= 0) throw ValidationError("lambda", "must be positive");
  if (p.nu <= 0) throw ValidationError("nu", "must be positive");
  if (p.epsilon <= 0) throw ValidationError("epsilon", "must be positive");
  if (p.beta < 0) throw ValidationError("beta", "must be nonnegative");
  if (p.delta < 0) throw ValidationError("delta", "must be nonnegative");
  if (p.gamma != 0.0 && p.gamma != 1.0) throw ValidationError("gamma", "must be 0 or 1");
  if (p.dt <= 0) throw ValidationError("dt", "must be positive");
  if (p.t_final < 0) throw ValidationError("t_final", "must be nonnegative");
  if (p.cg_tol <= 0) throw ValidationError("cg_tol", "must be positive");
  if (p.picard_tol <= 0) throw ValidationError("picard_tol", "must be positive");
  if (p.cg_maxit_factor < 1) throw ValidationError("cg_maxit_factor", "must be >= 1");
  if (p.picard_maxit < 1) throw ValidationError("picard_maxit", "must be >= 1");
  if (cfg.snapshot_every < 0) throw ValidationError("snapshot_every", "must be >= 0");
  if (cfg.square_side <= 0) throw ValidationError("square_side", "must be positive");
  if (cfg.bubble_radius <= 0) throw ValidationError("bubble_radius", "must be positive");

  const double ratio = p.t_final / p.dt;
  if (std::abs(ratio - std::llround(ratio)) > 1e-8 * std::max(1.0, ratio)) {
    throw ValidationError("t_final", "must be an integer multiple of dt");
  }

  if (cfg.levels.empty()) throw ValidationError("levels", "must not be empty");
  for (size_t i = 0; i < cfg.levels.size(); ++i) {
    if (cfg.levels[i] < 2) throw ValidationError("levels", "entries must be >= 2");
    if (i > 0 && cfg.levels[i] != 2 * cfg.levels[i - 1]) {
      throw ValidationError("levels", "must form a dyadic chain (each entry twice the previous)");
    }
  }
}

std::string to_string(ExperimentKind e) {
  switch (e) {
    case ExperimentKind::converge: return "converge";
    case ExperimentKind::square_bubble: return "square_bubble";
    case ExperimentKind::buoyant_bubble: return "buoyant_bubble";
    case ExperimentKind::custom: return "custom";
  }
  return "?";
}

std::string to_string(InitialCondition ic) {
  switch (ic) {
    case InitialCondition::trig: return "trig";
    case InitialCondition::square: return "square";
    case InitialCondition::circle: return "circle";
  }
  return "?";
}

std::string to_string(StepMode m) {
  return m == StepMode::coupled ? "coupled" : "decoupled";
}

}  // namespace savmac
