#include "beamlab/damping.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <sstream>

#include "beamlab/error.hpp"

namespace beamlab {

DampingProfile DampingProfile::user_table(
    double alpha, std::vector<std::pair<double, double>> samples) {
  DampingProfile p;
  p.alpha = alpha;
  p.kappa = 1.0;
  p.form = Form::user_table;
  p.table = std::move(samples);
  return p;
}

double eval_damping(const DampingProfile& profile, double x) {
  if (!std::isfinite(x))
    throw Error(ErrorCode::argument, "eval_damping: x is not finite");
  if (x < -1.0 || x > 1.0)
    throw Error(ErrorCode::argument, "eval_damping: x outside [-1,1]");
  if (x <= 0.0) return 0.0;
  if (profile.form == DampingProfile::Form::pure_power)
    return profile.kappa * std::pow(x, profile.alpha);
  const auto& t = profile.table;
  if (t.empty()) throw Error(ErrorCode::argument, "eval_damping: empty table");
  if (x <= t.front().first) return t.front().second;
  for (std::size_t i = 1; i < t.size(); ++i) {
    if (x <= t[i].first) {
      const double w = (x - t[i - 1].first) / (t[i].first - t[i - 1].first);
      return t[i - 1].second + w * (t[i].second - t[i - 1].second);
    }
  }
  return t.back().second;
}

std::vector<std::string> validate_profile(const DampingProfile& p) {
  std::vector<std::string> out;
  if (!(p.alpha > 0.0 && p.alpha < 5.0))
    out.push_back("alpha must lie in open interval (0,5)");
  if (!(p.kappa >= 0.0)) out.push_back("kappa must be >= 0");
  if (p.form == DampingProfile::Form::user_table) {
    const auto& t = p.table;
    if (t.size() < 2) {
      out.push_back("user_table needs at least two samples");
      return out;
    }
    if (t.front().first != 0.0 || t.front().second != 0.0)
      out.push_back("user_table must start at (0,0)");
    if (t.back().first != 1.0) out.push_back("user_table must end at x=1");
    for (std::size_t i = 1; i < t.size(); ++i) {
      if (!(t[i].first > t[i - 1].first))
        out.push_back("user_table abscissae must be strictly increasing");
      if (t[i].second < t[i - 1].second)
        out.push_back("user_table values must be nondecreasing");
      if (t[i].second < 0.0) out.push_back("user_table values must be >= 0");
    }
  }
  return out;
}

std::vector<std::string> validate_config(const BeamConfig& cfg) {
  std::vector<std::string> out = validate_profile(cfg.profile);
  if (cfg.n_elements < 4) out.push_back("n_elements must be >= 4");
  if (cfg.n_elements % 2 != 0)
    out.push_back("n_elements must be even (equal split across the interface)");
  if (!(cfg.grading >= 1.0)) out.push_back("grading must be >= 1");
  if (!(cfg.quad_tol > 0.0 && cfg.quad_tol <= 1e-6))
    out.push_back("quad_tol must lie in (0, 1e-6]");
  if (!(cfg.time_horizon > 0.0)) out.push_back("time_horizon must be > 0");
  if (!(cfg.dt > 0.0)) out.push_back("dt must be > 0");
  if (!(cfg.dt < cfg.time_horizon))
    out.push_back("dt must be smaller than time_horizon");
  return out;
}

namespace {

double parse_double(const std::string& key, const std::string& value) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(value, &pos);
  } catch (const std::exception&) {
    throw Error(ErrorCode::config, "config: bad numeric value for '" + key +
                                       "': " + value);
  }
  while (pos < value.size() && std::isspace(static_cast<unsigned char>(value[pos])))
    ++pos;
  if (pos != value.size())
    throw Error(ErrorCode::config,
                "config: bad numeric value for '" + key + "': " + value);
  return v;
}

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

} // namespace

void apply_override(BeamConfig& cfg, const std::string& key,
                    const std::string& value) {
  if (key == "alpha")
    cfg.profile.alpha = parse_double(key, value);
  else if (key == "kappa")
    cfg.profile.kappa = parse_double(key, value);
  else if (key == "n_elements") {
    const double v = parse_double(key, value);
    if (v != std::floor(v))
      throw Error(ErrorCode::config, "config: n_elements must be an integer");
    cfg.n_elements = static_cast<int>(v);
  } else if (key == "grading")
    cfg.grading = parse_double(key, value);
  else if (key == "quad_tol")
    cfg.quad_tol = parse_double(key, value);
  else if (key == "time_horizon")
    cfg.time_horizon = parse_double(key, value);
  else if (key == "dt")
    cfg.dt = parse_double(key, value);
  else
    throw Error(ErrorCode::config, "config: unknown key '" + key + "'");
}

BeamConfig parse_config_text(const std::string& text) {
  BeamConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw Error(ErrorCode::config, "config: line " + std::to_string(lineno) +
                                         " is not of the form key = value");
    apply_override(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

BeamConfig load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in)
    throw Error(ErrorCode::io, "config: cannot open file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_config_text(ss.str());
}

} // namespace beamlab
