#pragma once

// Run configuration: key=value text, one entry per line, '#' comments.
// Every key has a default; serialize() emits all of them so a written
// config parses back to an identical RunConfig.

#include <string>
#include <utility>
#include <vector>

#include "sonic/packets_modes.hpp"
#include "sonic/profile_flow.hpp"
#include "sonic/remainder.hpp"
#include "sonic/wave_solver.hpp"

namespace sonic {

struct RunConfig {
  // background flow
  VelocityProfile profile{};
  double ode_tol = 1e-12;
  double rho_min = 1e-3;
  double sigma_lo = 0.0;
  double sigma_hi = 0.0;
  double x0_horizon_max = 10.0;
  double x0_step = 0.05;
  double bisection_tol = 1e-12;

  // packet
  double alpha = 1.0;
  double eps = 0.25;
  double amplitude = 1.0;
  std::vector<double> a_list{4.0, 8.0, 16.0, 32.0, 64.0};

  // spectrum
  int n_eta = 201;
  double eta_max_factor = 20.0;
  double quad_tol = 1e-10;

  // wave solver
  double grid_rho_lo = 0.4;
  double grid_rho_hi = 4.0;
  int n_rho = 4096;
  double dt = 0.0;
  double t_final = 0.5;
  double t_eval = 0.0;
  int order = 4;
  double c_safe = 0.4;
  double sponge_width = 0.6;
  double sponge_strength = 40.0;
  std::vector<double> eta_list{-2.0, -6.0, -18.0};
  std::vector<double> pde_a_list{8.0, 16.0, 32.0};
  int eta_panels = 48;
  bool radial_term = false;  ///< include f_rho/rho in the evolved operator

  std::string output_dir = ".";
  bool deterministic = true;

  /// Throws ConfigError for inconsistent values.
  void validate() const;

  FlowConfig flow() const;
  SeparatrixOptions separatrix_options() const;
  PacketParams packet(double a, double sigma_star) const;
  RadialGrid grid() const;
  RemainderConfig remainder() const;

  /// Ordered key/value pairs, floats at 17 significant digits.
  std::vector<std::pair<std::string, std::string>> entries() const;
  std::string serialize() const;

  bool operator==(const RunConfig&) const = default;
};

/// Applies one key=value assignment. Throws ConfigError for unknown keys or
/// unparsable values.
void apply_setting(RunConfig& cfg, const std::string& key, const std::string& value);

/// Parses key=value text on top of the defaults. `origin` names the source
/// in error messages.
RunConfig parse_config(const std::string& text, const std::string& origin = "config");

RunConfig load_config(const std::string& path);

/// %.17g formatting used for every float the tool writes.
std::string format_double(double v);

/// Comma-separated list of doubles.
std::vector<double> parse_double_list(const std::string& text, const std::string& key);

}  // namespace sonic
