#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "sonic/error.hpp"
#include "sonic/kg_spectrum.hpp"
#include "sonic/remainder.hpp"
#include "sonic/wave_solver.hpp"
#include "test_util.hpp"

using namespace sonic;
using testutil::rel_err;

namespace {

FlowConfig constant_flow(double a) {
  FlowConfig f;
  f.profile = VelocityProfile::constant(a);
  return f;
}

RadialGrid small_grid(int n = 2049) {
  RadialGrid g;
  g.n_rho = n;
  return g;
}

// Gaussian-enveloped wave centred at rho_c, with zero initial g = f_t + c f_rho.
FieldState bump(const RadialGrid& grid, double rho_c, double k, const VelocityProfile& prof) {
  FieldState s;
  for (int i = 0; i < grid.n_rho; ++i) {
    const double r = grid.node(i);
    const double z = (r - rho_c) / 0.18;
    const Complex f = std::exp(Complex(-z * z, k * r));
    const Complex fr = f * Complex(-2.0 * z / 0.18, k);
    s.value.push_back(f);
    s.dvalue_dx0.push_back(-(prof(0.0) / r) * fr + Complex(0.0, 0.3) * f);
  }
  return s;
}

}  // namespace

TEST_CASE("grid: validation, spacing and step bounds") {
  RadialGrid g = small_grid(17);
  CHECK(g.spacing() == doctest::Approx(3.6 / 16));
  CHECK(g.nodes().back() == doctest::Approx(4.0));
  const auto prof = VelocityProfile::constant(-1.0);
  CHECK(g.time_step(prof) == g.max_stable_dt(prof));
  CHECK(g.max_stable_dt(prof) == doctest::Approx(0.4 * g.spacing() / (1.0 + 1.0 / 0.4)));
  g.dt = 2.0 * g.max_stable_dt(prof);
  CHECK_THROWS_AS(g.time_step(prof), ResolutionError);
  g.n_rho = 8;
  CHECK_THROWS_AS(g.validate(), ConfigError);
  CHECK_THROWS_AS(scheme_order_from_int(3), ConfigError);
  CHECK(scheme_order_from_int(2) == SchemeOrder::kSecond);
}

TEST_CASE("grid: wavenumbers must be resolved") {
  const RadialGrid g = small_grid(257);
  CHECK_NOTHROW(g.require_resolves(-2.0));
  CHECK_THROWS_AS(g.require_resolves(-60.0), ResolutionError);
  CHECK_THROWS_AS(solve_mode(-60.0, g, VelocityProfile::constant(-1.0), {0.1}, DataWindow::for_grid(g)),
                  ResolutionError);
}

TEST_CASE("solver: d'Alembert pulse converges at the design order") {
  const auto second = dalembert_convergence(257, SchemeOrder::kSecond, 0.8);
  MESSAGE("order 2: self " << second.self_order << ", vs exact " << second.order_vs_exact);
  CHECK(second.self_order >= 1.9);
  CHECK(second.order_vs_exact >= 1.9);
  const auto fourth = dalembert_convergence(257, SchemeOrder::kFourth, 0.8);
  MESSAGE("order 4: self " << fourth.self_order << ", vs exact " << fourth.order_vs_exact);
  CHECK(fourth.self_order >= 3.5);
  CHECK(fourth.error_vs_exact.back() < second.error_vs_exact.back());
  CHECK(fourth.error_vs_exact.back() < 1e-6);
}

TEST_CASE("solver: advance_to lands exactly and the step helper agrees") {
  const RadialGrid g = small_grid(257);
  const auto prof = VelocityProfile::constant(-1.0);
  const FieldState s0 = bump(g, 2.0, 10.0, prof);
  WaveSolver a(g, prof, s0);
  a.advance_to(0.1234);
  CHECK(a.time() == 0.1234);
  CHECK(a.steps_taken() == static_cast<long>(std::ceil(0.1234 / a.dt() - 1e-9)));
  WaveSolver b(g, prof, s0);
  b.step();
  const FieldState s1 = step_wave(s0, g, prof);
  CHECK(s1.x0 == b.time());
  CHECK(s1.value == b.state().value);
}

TEST_CASE("solver: initial state round-trips through the jets") {
  const RadialGrid g = small_grid(513);
  const auto prof = VelocityProfile::constant(-1.0);
  const FieldState s0 = bump(g, 2.0, 12.0, prof);
  const WaveSolver solver(g, prof, s0);
  const FieldState st = solver.state();
  const auto jets = solver.jets();
  for (int i = 40; i < g.n_rho - 40; i += 37) {
    const auto k = static_cast<std::size_t>(i);
    CHECK(st.value[k] == s0.value[k]);
    CHECK(std::abs(st.dvalue_dx0[k] - s0.dvalue_dx0[k]) < 1e-12);
    CHECK(std::abs(jets[k].d_x0 - s0.dvalue_dx0[k]) < 1e-12);
  }
}

TEST_CASE("solver: runaway growth is detected") {
  RadialGrid g = small_grid(257);
  g.c_safe = 3.0;
  const auto prof = VelocityProfile::constant(-1.0);
  WaveSolver solver(g, prof, bump(g, 2.0, 30.0, prof));
  CHECK_THROWS_AS(solver.advance_to(2.0), InstabilityError);
}

TEST_CASE("solver: KG pairing of two solutions is conserved for A = -1") {
  // The rho-weighted pairing is the conserved current of the full radial
  // operator, so this check evolves with the f_rho / rho term switched on.
  const auto prof = VelocityProfile::constant(-1.0);
  SolverOptions full;
  full.radial_term = true;
  const auto drift = [&](int n, const SolverOptions& opt, bool self_pair) {
    const RadialGrid g = small_grid(n);
    const auto rho = g.nodes();
    WaveSolver u(g, prof, bump(g, 2.0, 10.0, prof), opt);
    WaveSolver v(g, prof, bump(g, 1.9, 14.0, prof), opt);
    WaveSolver& w = self_pair ? u : v;
    const auto pair = [&] { return kg_inner(u.jets(), w.jets(), rho, u.time(), prof); };
    const double scale = std::abs(kg_inner(u.jets(), u.jets(), rho, 0.0, prof));
    const Complex before = pair();
    u.advance_to(0.3);
    if (!self_pair) v.advance_to(0.3);
    return std::abs(pair() - before) / scale;
  };
  const double coarse = drift(1025, full, false);
  const double fine = drift(2049, full, false);
  const double norm_fine = drift(2049, full, true);
  MESSAGE("pairing drift " << coarse << " -> " << fine << ", norm drift " << norm_fine);
  CHECK(fine < 1e-4);
  CHECK(norm_fine < 1e-4);
  CHECK(coarse / fine > 4.0);
  // The reduced operator has no conserved rho-weighted pairing.
  CHECK(drift(2049, SolverOptions{}, true) > 1e-2);
}

TEST_CASE("modes: windowed data matches the exact mode at x0 = 0") {
  const RadialGrid g = small_grid(1025);
  const auto flow = constant_flow(-1.0);
  const DataWindow w = DataWindow::for_grid(g);
  const double eta = -6.0;
  const auto hist = solve_mode(eta, g, flow.profile, {0.0, 0.05}, w);
  REQUIRE(hist.states.size() == 2);
  const auto data = outgoing_mode_data(eta, g, flow.profile, w);
  CHECK(hist.states[0].value == data.value);
  for (int i = 0; i < g.n_rho; i += 50) {
    const double r = g.node(i);
    const auto k = static_cast<std::size_t>(i);
    const ModeData m = mode_initial_data({-eta}, ModeFamily::kPlus, r, -1.0 / r);
    CHECK(std::abs(data.value[k] - w(r) * m.value) < 1e-15);
    CHECK(std::abs(data.dvalue_dx0[k] - w(r) * m.dvalue_dx0) < 1e-14);
    if (w(r) == 1.0 && r > 1.05) {
      // d = f0 - E vanishes at x0 = 0; its time derivative is -i gamma delta e^{-i eta rho}.
      const FieldJet e = eval_eikonal_jet(r, 0.0, eta, flow);
      CHECK(std::abs(data.value[k] - e.value) < 1e-15);
      const double delta = std::sqrt(eta * eta + 1.0) - std::abs(eta);
      const Complex dd = Complex(0.0, -delta) * e.value;
      CHECK(std::abs((data.dvalue_dx0[k] - e.d_x0) - dd) < 1e-13);
    }
  }
}

TEST_CASE("modes: evolved phase fronts follow the characteristics") {
  const RadialGrid g = small_grid(2049);
  const auto flow = constant_flow(-1.0);
  const double eta = -18.0;
  const double t = 0.2;
  const auto hist = solve_mode(eta, g, flow.profile, {t}, DataWindow::for_grid(g));
  double worst = 0.0;
  for (double r = 1.3; r <= 2.5; r += 0.05) {
    const Complex ratio = hist.fields.back().at(r).value / eval_eikonal(r, t, eta, flow);
    worst = std::max(worst, std::abs(std::arg(ratio)) / std::abs(eta));
  }
  MESSAGE("max front displacement " << worst);
  CHECK(worst < 5e-3);
}

TEST_CASE("sampled field: quintic interpolation and range checks") {
  const int n = 201;
  const double h = 0.01;
  std::vector<FieldJet> jets;
  for (int i = 0; i < n; ++i) {
    const double r = 1.0 + h * i;
    jets.push_back({Complex(std::sin(r), std::cos(2 * r)), Complex(r * r, 0.0), Complex(std::cos(r), -2 * std::sin(2 * r))});
  }
  const SampledField f(1.0, h, jets);
  CHECK(f.rho_hi() == doctest::Approx(3.0));
  for (double r : {1.2345, 2.0, 2.71}) {
    const FieldJet j = f.at(r);
    CHECK(std::abs(j.value - Complex(std::sin(r), std::cos(2 * r))) < 1e-9);
    CHECK(std::abs(j.d_x0 - Complex(r * r, 0.0)) < 1e-9);
  }
  CHECK_THROWS_AS(f.at(0.5), DomainError);
  CHECK_THROWS_AS(SampledField(1.0, h, std::vector<FieldJet>(4)), ResolutionError);
}

TEST_CASE("window: flat interior, compact support, smooth taper") {
  const DataWindow w{1.0, 2.0, 0.2};
  CHECK(w(1.5) == 1.0);
  CHECK(w(0.8) == 0.0);
  CHECK(w(2.2) == 0.0);
  CHECK(w(0.9) > 0.0);
  CHECK(w(0.9) < 1.0);
  CHECK(w(0.9) == doctest::Approx(w(2.1)));
  double prev = 0.0;
  for (double r = 0.8; r <= 1.0; r += 0.01) {
    CHECK(w(r) >= prev);
    prev = w(r);
  }
}

TEST_CASE("projections of a field: the eikonal reproduces the closed form") {
  const auto flow = constant_flow(-1.0);
  PacketParams p;
  p.alpha = 1.0;
  p.eps = 0.25;
  p.a = 8.0;
  p.sigma_star = 1.0;
  for (double eta : {-2.0, -6.0, -18.0}) {
    const FieldFn e = [&](double r) { return eval_eikonal_jet(r, 0.0, eta, flow); };
    const auto got = field_projections(e, 0.0, p, flow, 40.0 / p.a, 1e-11);
    const auto ref = eikonal_projections(-eta, p);
    CHECK(rel_err(got.c1, ref.c1) < 1e-8);
    CHECK(rel_err(got.c2, ref.c2) < 1e-8);
  }
}
