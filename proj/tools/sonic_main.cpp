// sonic: command-line front end for the acoustic black hole toolkit.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <string>
#include <vector>

#include "sonic/config.hpp"
#include "sonic/error.hpp"
#include "sonic/io.hpp"
#include "sonic/kg_spectrum.hpp"
#include "sonic/packets_modes.hpp"
#include "sonic/profile_flow.hpp"
#include "sonic/remainder.hpp"
#include "sonic/selftest.hpp"
#include "sonic/wave_solver.hpp"

namespace {

using sonic::format_double;
using sonic::Json;
using sonic::RunConfig;

struct Overrides {
  std::string config_path;
  std::string output_dir;
  std::vector<std::string> settings;  // key=value
  int n_rho = 0;
  double dt = -1.0;
  double t_final = -1.0;
  std::string eta_list;
  int order = 0;
};

RunConfig resolve(const Overrides& o) {
  RunConfig cfg = o.config_path.empty() ? RunConfig{} : sonic::load_config(o.config_path);
  for (const auto& s : o.settings) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw sonic::ConfigError("--set expects key=value, got '" + s + "'");
    sonic::apply_setting(cfg, s.substr(0, eq), s.substr(eq + 1));
  }
  if (o.n_rho != 0) cfg.n_rho = o.n_rho;
  if (o.dt >= 0.0) cfg.dt = o.dt;
  if (o.t_final >= 0.0) cfg.t_final = o.t_final;
  if (!o.eta_list.empty()) cfg.eta_list = sonic::parse_double_list(o.eta_list, "eta-list");
  if (o.order != 0) cfg.order = o.order;
  if (!o.output_dir.empty()) cfg.output_dir = o.output_dir;
  cfg.validate();
  return cfg;
}

std::string short_num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", v);
  return buf;
}

Json with_config(const std::string& command, const RunConfig& cfg) {
  Json j = Json::object();
  j["tool"] = "sonic 0.1.0";
  j["command"] = command;
  j["config"] = sonic::config_json(cfg);
  return j;
}

int cmd_horizon(const RunConfig& cfg) {
  const auto sep = sonic::find_separatrix(cfg.flow(), cfg.separatrix_options());
  sonic::CsvTable t{{"x0", "rho_star"}, {}};
  for (std::size_t k = 0; k < sep.horizon.x0.size(); ++k)
    t.rows.push_back({sep.horizon.x0[k], sep.horizon.rho[k]});
  const auto meta = std::vector<std::pair<std::string, std::string>>{
      {"sigma_star", format_double(sep.sigma_star)}};
  sonic::write_output(cfg, "horizon.csv", sonic::csv_document("horizon", cfg, meta, t));

  Json j = with_config("horizon", cfg);
  j["sigma_star"] = sep.sigma_star;
  j["rho_star_first"] = sep.horizon.rho.front();
  j["rho_star_last"] = sep.horizon.rho.back();
  j["limit_error_minus"] = sep.limit_error_minus;
  j["limit_error_plus"] = sep.limit_error_plus;
  j["bisection_steps"] = sep.bisection_steps;
  sonic::write_output(cfg, "horizon.json", sonic::dump_json(j));

  std::cout << "sigma_star = " << format_double(sep.sigma_star) << "\n"
            << "rho_star(" << format_double(sep.horizon.x0.front())
            << ") = " << format_double(sep.horizon.rho.front()) << "  (|A(-inf)| = "
            << format_double(std::abs(cfg.flow().profile.limit_minus())) << ")\n"
            << "rho_star(" << format_double(sep.horizon.x0.back())
            << ") = " << format_double(sep.horizon.rho.back()) << "  (|A(+inf)| = "
            << format_double(std::abs(cfg.flow().profile.limit_plus())) << ")\n";
  return 0;
}

int cmd_spectrum(const RunConfig& cfg) {
  const auto flow = cfg.flow();
  const double sigma_star = sonic::find_separatrix(flow, cfg.separatrix_options()).sigma_star;
  Json summary = with_config("spectrum", cfg);
  summary["sigma_star"] = sigma_star;
  Json runs = Json::array();
  double previous = INFINITY;
  bool decreasing = true;
  for (double a : cfg.a_list) {
    const auto p = cfg.packet(a, sigma_star);
    const auto grid = sonic::spectrum_eta_grid(a, cfg.n_eta, cfg.eta_max_factor);
    const auto table = sonic::build_spectrum(p, grid, cfg.quad_tol);
    sonic::CsvTable t{{"eta", "density", "c1_re", "c1_im", "c2_re", "c2_im"}, {}};
    for (std::size_t k = 0; k < table.eta.size(); ++k)
      t.rows.push_back({table.eta[k], table.density[k], table.c1[k].real(),
                        table.c1[k].imag(), table.c2[k].real(), table.c2[k].imag()});
    const auto meta = std::vector<std::pair<std::string, std::string>>{
        {"a", format_double(a)},
        {"sigma_star", format_double(sigma_star)},
        {"eta_column", "|eta| of the outgoing mode"}};
    const std::string name = "spectrum_a" + short_num(a) + ".csv";
    sonic::write_output(cfg, name, sonic::csv_document("spectrum", cfg, meta, t));
    Json r = Json::object();
    r["a"] = a;
    r["file"] = name;
    r["total"] = table.total;
    r["norm"] = table.norm;
    r["total_normalized"] = table.total_normalized;
    runs.push_back(r);
    decreasing = decreasing && table.total < previous;
    previous = table.total;
    std::cout << "a = " << short_num(a) << "  total = " << format_double(table.total)
              << "  total_normalized = " << format_double(table.total_normalized) << "\n";
  }
  summary["runs"] = runs;
  summary["totals_decreasing_in_a"] = decreasing;

  // Packet profile and the numeric-versus-closed norm table.
  const auto p0 = cfg.packet(cfg.a_list.front(), sigma_star);
  sonic::CsvTable prof{{"sigma", "re", "im", "abs"}, {}};
  for (const auto& s : sonic::sample_packet_profile(p0, 10.0 / p0.a, 401))
    prof.rows.push_back({s.sigma, s.value.real(), s.value.imag(), std::abs(s.value)});
  sonic::write_output(cfg, "packet_profile.csv",
                      sonic::csv_document("spectrum", cfg, {{"a", format_double(p0.a)}}, prof));
  sonic::CsvTable norms{{"a", "norm_closed", "norm_numeric", "rel_err"}, {}};
  for (const auto& r : sonic::norm_table(p0, cfg.a_list, flow))
    norms.rows.push_back({r.a, r.norm_closed, r.norm_numeric, r.rel_err});
  sonic::write_output(cfg, "norms.csv", sonic::csv_document("spectrum", cfg, {}, norms));
  sonic::write_output(cfg, "spectrum.json", sonic::dump_json(summary));
  return 0;
}

int cmd_limit(const RunConfig& cfg) {
  const auto sweep = sonic::limit_sweep(cfg.alpha, cfg.eps, cfg.a_list, cfg.quad_tol);
  sonic::CsvTable t{{"a", "total", "total_normalized", "limit", "residual"}, {}};
  for (const auto& r : sweep.rows)
    t.rows.push_back({r.a, r.total, r.total_normalized, r.limit, r.residual});
  const auto meta = std::vector<std::pair<std::string, std::string>>{
      {"limit", format_double(sweep.limit)},
      {"limit_variant", format_double(sweep.limit_variant)},
      {"fitted_exponent", format_double(sweep.fitted_exponent)}};
  sonic::write_output(cfg, "sweep.csv", sonic::csv_document("limit", cfg, meta, t));

  Json j = with_config("limit", cfg);
  j["limit"] = sweep.limit;
  j["limit_variant"] = sweep.limit_variant;
  j["variant_ratio"] = sweep.limit_variant / sweep.limit;
  j["fitted_exponent"] = sweep.fitted_exponent;
  j["fit_prefactor"] = sweep.fit_prefactor;
  j["final_residual"] = sweep.rows.back().residual;
  Json warnings = Json::array();
  if (sweep.rows.size() < 3)
    warnings.push_back("sweep has fewer than three a values; the fitted exponent is degenerate");
  j["warnings"] = warnings;
  sonic::write_output(cfg, "limit.json", sonic::dump_json(j));

  for (const auto& w : warnings) std::cerr << "warning: " << w.get<std::string>() << "\n";
  std::cout << "limit = " << format_double(sweep.limit) << "\n"
            << "limit (alternative form) = " << format_double(sweep.limit_variant)
            << "  ratio = " << format_double(sweep.limit_variant / sweep.limit) << "\n"
            << "fitted residual exponent = " << format_double(sweep.fitted_exponent) << "\n";
  for (const auto& r : sweep.rows)
    std::cout << "a = " << short_num(r.a) << "  total_normalized = "
              << format_double(r.total_normalized) << "  residual = "
              << format_double(r.residual) << "\n";
  return 0;
}

int cmd_pde_verify(const RunConfig& cfg) {
  const auto rc = cfg.remainder();
  const auto rep = sonic::remainder_contribution(rc);
  const auto conv = sonic::dalembert_convergence(257, sonic::SchemeOrder::kSecond, 0.8);

  Json j = with_config("pde-verify", cfg);
  j["sigma_star"] = rep.sigma_star;
  j["t_eval"] = rc.t_eval;
  Json sweep = Json::array();
  for (const auto& r : rep.sweep) {
    Json x = Json::object();
    x["a"] = r.a;
    x["eta"] = nullptr;
    x["dev_rel"] = r.dev_rel;
    x["fit_exponent"] = rep.a_fit.exponent;
    x["total_exact"] = r.total_exact;
    x["total_eikonal"] = r.total_eikonal;
    x["total_full"] = r.total_full;
    sweep.push_back(x);
  }
  j["a_sweep"] = sweep;
  j["a_fit_exponent"] = rep.a_fit.exponent;
  Json etas = Json::array();
  for (const auto& r : rep.eta_rows) {
    Json x = Json::object();
    x["a"] = r.a;
    x["eta"] = r.eta;
    x["dev_rel"] = r.dev_rel;
    x["fit_exponent"] = rep.eta_fit.exponent;
    x["density_exact"] = r.density_exact;
    x["density_eikonal"] = r.density_eikonal;
    x["c2_dev_rel"] = r.c2_dev_rel;
    etas.push_back(x);
  }
  j["eta_rows"] = etas;
  j["eta_fit_exponent"] = rep.eta_fit.exponent;
  Json fields = Json::array();
  for (const auto& r : rep.field_rows) {
    Json x = Json::object();
    x["eta"] = r.eta;
    x["t"] = r.t;
    x["max_abs_d"] = r.max_abs_d;
    x["bound_constant"] = r.bound_constant;
    fields.push_back(x);
  }
  j["field_rows"] = fields;
  j["field_fit_exponent"] = rep.field_fit.exponent;
  Json evolved = Json::array();
  for (const auto& r : rep.evolved) {
    Json x = Json::object();
    x["a"] = r.a;
    x["eta"] = r.eta;
    x["t"] = r.t;
    x["c1_dev_rel"] = r.c1_dev_rel;
    x["c2_dev_rel"] = r.c2_dev_rel;
    evolved.push_back(x);
  }
  j["evolved_projections"] = evolved;
  j["window_error"] = rep.window_error;
  j["evolved_window_error"] = rep.evolved_window_error;
  j["discretization_error"] = rep.discretization_error;
  Json c = Json::object();
  c["n_rho"] = conv.n_rho;
  c["error_vs_exact"] = conv.error_vs_exact;
  c["order_vs_exact"] = conv.order_vs_exact;
  c["self_order"] = conv.self_order;
  j["dalembert_convergence"] = c;
  j["warnings"] = rep.warnings;
  const bool a_ok = rep.a_fit.exponent >= 0.5;
  j["a_decay_ok"] = a_ok;
  sonic::write_output(cfg, "pde_report.json", sonic::dump_json(j));

  // Snapshots of the first sampled mode.
  const auto grid = cfg.grid();
  const double eta = cfg.eta_list.front();
  const std::vector<double> times{0.0, 0.5 * cfg.t_final, cfg.t_final};
  const auto hist = sonic::solve_mode(eta, grid, cfg.flow().profile, times,
                                      sonic::DataWindow::for_grid(grid));
  for (std::size_t m = 0; m < hist.states.size(); ++m) {
    sonic::CsvTable t{{"rho", "re", "im"}, {}};
    const auto& st = hist.states[m];
    for (int i = 0; i < grid.n_rho; ++i) {
      const auto& v = st.value[static_cast<std::size_t>(i)];
      t.rows.push_back({grid.node(i), v.real(), v.imag()});
    }
    const auto meta = std::vector<std::pair<std::string, std::string>>{
        {"eta", format_double(eta)}, {"x0", format_double(st.x0)}};
    sonic::write_output(cfg, "field_eta" + short_num(eta) + "_t" + std::to_string(m) + ".csv",
                        sonic::csv_document("pde-verify", cfg, meta, t));
  }

  for (const auto& w : rep.warnings) std::cerr << "warning: " << w << "\n";
  std::cout << "a-decay exponent of the relative deviation = "
            << format_double(rep.a_fit.exponent) << (a_ok ? "" : "  (below 0.5)") << "\n"
            << "eta-decay exponent of the per-eta deviation = "
            << format_double(rep.eta_fit.exponent) << "\n"
            << "eta-decay exponent of |f0 - E| (1+eta^2)^{1/4} at t_final = "
            << format_double(rep.field_fit.exponent) << "\n"
            << "d'Alembert self-convergence order = " << format_double(conv.self_order) << "\n";
  return a_ok ? 0 : static_cast<int>(sonic::ExitCode::kTolerance);
}

int cmd_selftest() {
  const auto checks = sonic::run_selftest();
  bool ok = true;
  for (const auto& c : checks) {
    std::printf("%-4s %-45s rel_err=%.3e (tol %.1e)\n", c.pass ? "ok" : "FAIL", c.name.c_str(),
                c.rel_err, c.tolerance);
    ok = ok && c.pass;
  }
  return ok ? 0 : static_cast<int>(sonic::ExitCode::kTolerance);
}

void add_common(CLI::App* sub, Overrides& o, bool solver_flags) {
  sub->add_option("--config", o.config_path, "key=value configuration file");
  sub->add_option("--set", o.settings, "override one config key (key=value)");
  sub->add_option("--output-dir", o.output_dir, "directory for output files");
  if (!solver_flags) return;
  sub->add_option("--nrho", o.n_rho, "radial grid nodes");
  sub->add_option("--dt", o.dt, "time step (0 selects the stable maximum)");
  sub->add_option("--tfinal", o.t_final, "final evolution time");
  sub->add_option("--eta-list", o.eta_list, "comma-separated negative wavenumbers");
  sub->add_option("--order", o.order, "spatial scheme order (2 or 4)");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Particle creation by a time-dependent acoustic black hole"};
  app.require_subcommand(1);
  Overrides o;
  auto* horizon = app.add_subcommand("horizon", "locate the separatrix and horizon curve");
  auto* spectrum = app.add_subcommand("spectrum", "creation density and totals per a");
  auto* limit = app.add_subcommand("limit", "large-a limit and convergence sweep");
  auto* pde = app.add_subcommand("pde-verify", "exact-mode versus eikonal projections");
  auto* self = app.add_subcommand("selftest", "closed forms against independent checks");
  for (auto* s : {horizon, spectrum, limit, pde}) add_common(s, o, true);
  (void)self;

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : static_cast<int>(sonic::ExitCode::kConfig);
  }

  try {
    if (self->parsed()) return cmd_selftest();
    const RunConfig cfg = resolve(o);
    if (horizon->parsed()) return cmd_horizon(cfg);
    if (spectrum->parsed()) return cmd_spectrum(cfg);
    if (limit->parsed()) return cmd_limit(cfg);
    if (pde->parsed()) return cmd_pde_verify(cfg);
  } catch (const sonic::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(e.code());
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return static_cast<int>(sonic::ExitCode::kTolerance);
  }
  return 0;
}
