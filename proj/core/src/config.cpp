#include "sonic/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>

#include "sonic/error.hpp"

namespace sonic {

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_double(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  double v = 0.0;
  const auto* end = t.data() + t.size();
  const auto r = std::from_chars(t.data(), end, v);
  if (t.empty() || r.ec != std::errc() || r.ptr != end || !std::isfinite(v))
    throw ConfigError("value of '" + key + "' is not a finite number: '" + text + "'");
  return v;
}

int parse_int(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  int v = 0;
  const auto* end = t.data() + t.size();
  const auto r = std::from_chars(t.data(), end, v);
  if (t.empty() || r.ec != std::errc() || r.ptr != end)
    throw ConfigError("value of '" + key + "' is not an integer: '" + text + "'");
  return v;
}

bool parse_bool(const std::string& text, const std::string& key) {
  const std::string t = trim(text);
  if (t == "true" || t == "1") return true;
  if (t == "false" || t == "0") return false;
  throw ConfigError("value of '" + key + "' is not a boolean: '" + text + "'");
}

std::string join(const std::vector<double>& v) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += ',';
    out += format_double(v[i]);
  }
  return out;
}

void require_increasing(const std::vector<double>& v, const std::string& key) {
  if (v.empty()) throw ConfigError("'" + key + "' must not be empty");
  for (std::size_t i = 1; i < v.size(); ++i)
    if (!(v[i] > v[i - 1])) throw ConfigError("'" + key + "' must be strictly increasing");
}

}  // namespace

std::vector<double> parse_double_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_double(item, key));
  if (out.empty()) throw ConfigError("'" + key + "' must list at least one value");
  return out;
}

void RunConfig::validate() const {
  try {
    flow().validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (!(bisection_tol > 0.0)) throw ConfigError("bisection_tol must be positive");
  if (!(x0_horizon_max > 0.0) || !(x0_step > 0.0))
    throw ConfigError("x0_horizon_max and x0_step must be positive");
  if (sigma_lo < 0.0 || sigma_hi < 0.0 || (sigma_hi > 0.0 && sigma_hi <= sigma_lo))
    throw ConfigError("separatrix bracket must satisfy 0 <= sigma_lo < sigma_hi");
  if (!(alpha > 0.0)) throw ConfigError("alpha must be positive");
  if (!(eps > 0.0 && eps <= 0.5)) throw ConfigError("eps must lie in (0, 0.5]");
  if (!(amplitude > 0.0)) throw ConfigError("amplitude must be positive");
  require_increasing(a_list, "a_list");
  if (!(a_list.front() > 0.0)) throw ConfigError("a_list entries must be positive");
  if (n_eta < 2) throw ConfigError("n_eta must be at least 2");
  if (!(eta_max_factor > 0.0)) throw ConfigError("eta_max_factor must be positive");
  if (!(quad_tol > 0.0 && quad_tol < 1e-2)) throw ConfigError("quad_tol must lie in (0, 1e-2)");
  try {
    grid().validate();
  } catch (const DomainError& e) {
    throw ConfigError(e.what());
  }
  if (order != 2 && order != 4) throw ConfigError("order must be 2 or 4");
  if (!(t_final > 0.0) || !(t_eval >= 0.0))
    throw ConfigError("t_final must be positive and t_eval nonnegative");
  {
    std::vector<double> mags;
    for (double e : eta_list) {
      if (!(e < 0.0)) throw ConfigError("eta_list entries must be negative");
      mags.push_back(-e);
    }
    require_increasing(mags, "|eta_list|");
  }
  require_increasing(pde_a_list, "pde_a_list");
  if (!(pde_a_list.front() > 0.0)) throw ConfigError("pde_a_list entries must be positive");
  if (eta_panels < 1) throw ConfigError("eta_panels must be positive");
  if (output_dir.empty()) throw ConfigError("output_dir must not be empty");
}

FlowConfig RunConfig::flow() const {
  FlowConfig f;
  f.profile = profile;
  // The constant form is defined by a_minus alone.
  if (f.profile.form == ProfileForm::kConstant) f.profile.a_plus = f.profile.a_minus;
  f.ode_tol = ode_tol;
  f.rho_min = rho_min;
  return f;
}

SeparatrixOptions RunConfig::separatrix_options() const {
  SeparatrixOptions o;
  o.sigma_lo = sigma_lo;
  o.sigma_hi = sigma_hi;
  o.x0_horizon_max = x0_horizon_max;
  o.x0_step = x0_step;
  o.tol = bisection_tol;
  return o;
}

PacketParams RunConfig::packet(double a, double sigma_star) const {
  PacketParams p;
  p.alpha = alpha;
  p.eps = eps;
  p.a = a;
  p.sigma_star = sigma_star;
  p.amplitude = amplitude;
  return p;
}

RadialGrid RunConfig::grid() const {
  RadialGrid g;
  g.rho_min = grid_rho_lo;
  g.rho_max = grid_rho_hi;
  g.n_rho = n_rho;
  g.dt = dt;
  g.order = order == 2 ? SchemeOrder::kSecond : SchemeOrder::kFourth;
  g.c_safe = c_safe;
  g.sponge_width = sponge_width;
  g.sponge_strength = sponge_strength;
  return g;
}

RemainderConfig RunConfig::remainder() const {
  RemainderConfig r;
  r.flow = flow();
  r.alpha = alpha;
  r.eps = eps;
  r.a_values = pde_a_list;
  r.eta_samples = eta_list;
  r.grid = grid();
  r.t_eval = t_eval;
  r.t_final = t_final;
  r.eta_panels = eta_panels;
  r.tol = quad_tol;
  r.radial_term = radial_term;
  return r;
}

std::vector<std::pair<std::string, std::string>> RunConfig::entries() const {
  const auto d = format_double;
  return {
      {"form", to_string(profile.form)},
      {"a_minus", d(profile.a_minus)},
      {"a_plus", d(profile.a_plus)},
      {"tau", d(profile.tau)},
      {"ode_tol", d(ode_tol)},
      {"rho_min", d(rho_min)},
      {"sigma_lo", d(sigma_lo)},
      {"sigma_hi", d(sigma_hi)},
      {"x0_horizon_max", d(x0_horizon_max)},
      {"x0_step", d(x0_step)},
      {"bisection_tol", d(bisection_tol)},
      {"alpha", d(alpha)},
      {"eps", d(eps)},
      {"amplitude", d(amplitude)},
      {"a_list", join(a_list)},
      {"n_eta", std::to_string(n_eta)},
      {"eta_max_factor", d(eta_max_factor)},
      {"quad_tol", d(quad_tol)},
      {"grid_rho_lo", d(grid_rho_lo)},
      {"grid_rho_hi", d(grid_rho_hi)},
      {"n_rho", std::to_string(n_rho)},
      {"dt", d(dt)},
      {"t_final", d(t_final)},
      {"t_eval", d(t_eval)},
      {"order", std::to_string(order)},
      {"c_safe", d(c_safe)},
      {"sponge_width", d(sponge_width)},
      {"sponge_strength", d(sponge_strength)},
      {"eta_list", join(eta_list)},
      {"pde_a_list", join(pde_a_list)},
      {"eta_panels", std::to_string(eta_panels)},
      {"radial_term", radial_term ? "true" : "false"},
      {"output_dir", output_dir},
      {"deterministic", deterministic ? "true" : "false"},
  };
}

std::string RunConfig::serialize() const {
  std::string out;
  for (const auto& [k, v] : entries()) out += k + "=" + v + "\n";
  return out;
}

void apply_setting(RunConfig& c, const std::string& key, const std::string& value) {
  using Setter = std::function<void(const std::string&)>;
  const auto real = [&](double& field) {
    return Setter([&field, key](const std::string& v) { field = parse_double(v, key); });
  };
  const auto integer = [&](int& field) {
    return Setter([&field, key](const std::string& v) { field = parse_int(v, key); });
  };
  const auto list = [&](std::vector<double>& field) {
    return Setter([&field, key](const std::string& v) { field = parse_double_list(v, key); });
  };
  const std::map<std::string, Setter> setters = {
      {"form", [&](const std::string& v) { c.profile.form = profile_form_from_string(trim(v)); }},
      {"a_minus", real(c.profile.a_minus)},
      {"a_plus", real(c.profile.a_plus)},
      {"tau", real(c.profile.tau)},
      {"ode_tol", real(c.ode_tol)},
      {"rho_min", real(c.rho_min)},
      {"sigma_lo", real(c.sigma_lo)},
      {"sigma_hi", real(c.sigma_hi)},
      {"x0_horizon_max", real(c.x0_horizon_max)},
      {"x0_step", real(c.x0_step)},
      {"bisection_tol", real(c.bisection_tol)},
      {"alpha", real(c.alpha)},
      {"eps", real(c.eps)},
      {"amplitude", real(c.amplitude)},
      {"a_list", list(c.a_list)},
      {"n_eta", integer(c.n_eta)},
      {"eta_max_factor", real(c.eta_max_factor)},
      {"quad_tol", real(c.quad_tol)},
      {"grid_rho_lo", real(c.grid_rho_lo)},
      {"grid_rho_hi", real(c.grid_rho_hi)},
      {"n_rho", integer(c.n_rho)},
      {"dt", real(c.dt)},
      {"t_final", real(c.t_final)},
      {"t_eval", real(c.t_eval)},
      {"order", integer(c.order)},
      {"c_safe", real(c.c_safe)},
      {"sponge_width", real(c.sponge_width)},
      {"sponge_strength", real(c.sponge_strength)},
      {"eta_list", list(c.eta_list)},
      {"pde_a_list", list(c.pde_a_list)},
      {"eta_panels", integer(c.eta_panels)},
      {"radial_term", [&](const std::string& v) { c.radial_term = parse_bool(v, key); }},
      {"output_dir", [&](const std::string& v) { c.output_dir = trim(v); }},
      {"deterministic", [&](const std::string& v) { c.deterministic = parse_bool(v, key); }},
  };
  const auto it = setters.find(key);
  if (it == setters.end()) throw ConfigError("unknown config key '" + key + "'");
  it->second(value);
}

RunConfig parse_config(const std::string& text, const std::string& origin) {
  RunConfig cfg;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos)
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    const std::string key = trim(t.substr(0, eq));
    try {
      apply_setting(cfg, key, t.substr(eq + 1));
    } catch (const ConfigError& e) {
      throw ConfigError(origin + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return cfg;
}

RunConfig load_config(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("cannot open config file '" + path + "'");
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config(ss.str(), path);
}

}  // namespace sonic
