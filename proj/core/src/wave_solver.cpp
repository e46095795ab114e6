#include "sonic/wave_solver.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "sonic/error.hpp"
#include "sonic/packets_modes.hpp"

namespace sonic {

SchemeOrder scheme_order_from_int(int order) {
  if (order == 2) return SchemeOrder::kSecond;
  if (order == 4) return SchemeOrder::kFourth;
  throw ConfigError("scheme order must be 2 or 4, got " + std::to_string(order));
}

void RadialGrid::validate() const {
  if (!(rho_min > 0.0)) throw ConfigError("grid rho_min must be positive");
  if (!(rho_max > rho_min)) throw ConfigError("grid rho_max must exceed rho_min");
  if (n_rho < 16) throw ConfigError("grid needs at least 16 nodes");
  if (!(dt >= 0.0) || !std::isfinite(dt)) throw ConfigError("dt must be >= 0");
  if (!(c_safe > 0.0)) throw ConfigError("c_safe must be positive");
  if (!(sponge_width >= 0.0) || sponge_width >= rho_max - rho_min)
    throw ConfigError("sponge width must lie in [0, rho_max - rho_min)");
  if (!(sponge_strength >= 0.0)) throw ConfigError("sponge strength must be >= 0");
}

double RadialGrid::spacing() const { return (rho_max - rho_min) / (n_rho - 1); }

std::vector<double> RadialGrid::nodes() const {
  std::vector<double> out(static_cast<std::size_t>(n_rho));
  for (int i = 0; i < n_rho; ++i) out[static_cast<std::size_t>(i)] = node(i);
  return out;
}

double RadialGrid::max_stable_dt(const VelocityProfile& profile) const {
  return c_safe * spacing() / (1.0 + profile.max_abs() / rho_min);
}

double RadialGrid::time_step(const VelocityProfile& profile) const {
  const double limit = max_stable_dt(profile);
  if (dt == 0.0) return limit;
  if (dt > limit * (1.0 + 1e-12))
    throw ResolutionError("dt " + std::to_string(dt) + " exceeds the stability bound " +
                          std::to_string(limit));
  return dt;
}

void RadialGrid::require_resolves(double eta) const {
  const double bound = 2.0 * std::numbers::pi / 16.0;
  if (std::abs(eta) * spacing() > bound)
    throw ResolutionError("wavenumber " + std::to_string(eta) +
                          " needs spacing <= " + std::to_string(bound / std::abs(eta)) +
                          ", grid has " + std::to_string(spacing()));
}

namespace {

constexpr int kGhost = 2;

}  // namespace

WaveSolver::WaveSolver(const RadialGrid& grid, const VelocityProfile& profile,
                       const FieldState& initial, SolverOptions options)
    : grid_(grid), profile_(profile), options_(options) {
  grid_.validate();
  require(std::isfinite(profile_(0.0)) && std::isfinite(profile_.max_abs()),
          "wave solver needs a finite velocity profile");
  const auto n = static_cast<std::size_t>(grid_.n_rho);
  if (initial.value.size() != n || initial.dvalue_dx0.size() != n)
    throw ResolutionError("initial state does not match the grid");
  h_rho_ = grid_.spacing();
  dt_ = grid_.time_step(profile_);
  t_ = initial.x0;
  rho_ = grid_.nodes();
  inv_rho_.resize(n);
  sponge_.assign(n, 0.0);
  const double edge = grid_.rho_max - grid_.sponge_width;
  for (std::size_t i = 0; i < n; ++i) {
    inv_rho_[i] = 1.0 / rho_[i];
    if (grid_.sponge_width > 0.0 && rho_[i] > edge) {
      const double x = (rho_[i] - edge) / grid_.sponge_width;
      sponge_[i] = grid_.sponge_strength * x * x;
    }
  }
  for (auto* v : {&k1f_, &k1g_, &k2f_, &k2g_, &k3f_, &k3g_, &k4f_, &k4g_, &tf_, &tg_})
    v->resize(n);
  ef_.resize(n + 2 * kGhost);
  eg_.resize(n + 2 * kGhost);

  f_ = initial.value;
  for (const auto& z : f_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw DomainError("initial state has non-finite entries");
  // g = f_t + c f_rho
  std::vector<Complex> drho(n);
  fill_ghosts(f_, ef_);
  centered_first(ef_, drho);
  const double a = profile_(t_);
  g_.resize(n);
  for (std::size_t i = 0; i < n; ++i)
    g_[i] = initial.dvalue_dx0[i] + a * inv_rho_[i] * drho[i];
}

void WaveSolver::fill_ghosts(const std::vector<Complex>& u, std::vector<Complex>& ext) const {
  const std::size_t n = u.size();
  std::copy(u.begin(), u.end(), ext.begin() + kGhost);
  // Inner edge is outflow for both characteristic families: cubic extrapolation.
  ext[1] = 4.0 * u[0] - 6.0 * u[1] + 4.0 * u[2] - u[3];
  ext[0] = 4.0 * ext[1] - 6.0 * u[0] + 4.0 * u[1] - u[2];
  // Outer edge sits inside the sponge, where the field has been damped away.
  ext[n + kGhost] = 0.0;
  ext[n + kGhost + 1] = 0.0;
}

void WaveSolver::centered_first(const std::vector<Complex>& ext,
                                std::vector<Complex>& out) const {
  const std::size_t n = out.size();
  const Complex* e = ext.data() + kGhost;
  if (grid_.order == SchemeOrder::kSecond) {
    const double s = 1.0 / (2.0 * h_rho_);
    for (std::size_t i = 0; i < n; ++i) out[i] = (e[i + 1] - e[i - 1]) * s;
  } else {
    const double s = 1.0 / (12.0 * h_rho_);
    for (std::size_t i = 0; i < n; ++i)
      out[i] = (e[i - 2] - 8.0 * e[i - 1] + 8.0 * e[i + 1] - e[i + 2]) * s;
  }
}

void WaveSolver::rhs(double t, const std::vector<Complex>& f, const std::vector<Complex>& g,
                     std::vector<Complex>& df, std::vector<Complex>& dg) {
  const std::size_t n = f.size();
  fill_ghosts(f, ef_);
  fill_ghosts(g, eg_);
  const Complex* F = ef_.data() + kGhost;
  const Complex* G = eg_.data() + kGhost;
  const double a = profile_(t);
  const double h = h_rho_;
  if (grid_.order == SchemeOrder::kSecond) {
    const double s2 = 1.0 / (h * h);
    const double s1 = 1.0 / (2.0 * h);
    for (std::size_t i = 0; i < n; ++i) {
      const double c = a * inv_rho_[i];
      Complex uf, ug;
      if (c < 0.0) {
        uf = (-3.0 * F[i] + 4.0 * F[i + 1] - F[i + 2]) * s1;
        ug = (-3.0 * G[i] + 4.0 * G[i + 1] - G[i + 2]) * s1;
      } else {
        uf = (3.0 * F[i] - 4.0 * F[i - 1] + F[i - 2]) * s1;
        ug = (3.0 * G[i] - 4.0 * G[i - 1] + G[i - 2]) * s1;
      }
      Complex frr = (F[i - 1] - 2.0 * F[i] + F[i + 1]) * s2;
      if (options_.radial_term) frr += (F[i + 1] - F[i - 1]) * s1 * inv_rho_[i];
      df[i] = g[i] - c * uf - sponge_[i] * f[i];
      dg[i] = frr - c * ug - sponge_[i] * g[i];
    }
  } else {
    const double s2 = 1.0 / (12.0 * h * h);
    const double s1 = 1.0 / (6.0 * h);
    for (std::size_t i = 0; i < n; ++i) {
      const double c = a * inv_rho_[i];
      Complex uf, ug;
      if (c < 0.0) {
        uf = (-2.0 * F[i - 1] - 3.0 * F[i] + 6.0 * F[i + 1] - F[i + 2]) * s1;
        ug = (-2.0 * G[i - 1] - 3.0 * G[i] + 6.0 * G[i + 1] - G[i + 2]) * s1;
      } else {
        uf = (F[i - 2] - 6.0 * F[i - 1] + 3.0 * F[i] + 2.0 * F[i + 1]) * s1;
        ug = (G[i - 2] - 6.0 * G[i - 1] + 3.0 * G[i] + 2.0 * G[i + 1]) * s1;
      }
      Complex frr =
          (-F[i - 2] + 16.0 * F[i - 1] - 30.0 * F[i] + 16.0 * F[i + 1] - F[i + 2]) * s2;
      if (options_.radial_term)
        frr += (F[i - 2] - 8.0 * F[i - 1] + 8.0 * F[i + 1] - F[i + 2]) * (0.5 * s1) * inv_rho_[i];
      df[i] = g[i] - c * uf - sponge_[i] * f[i];
      dg[i] = frr - c * ug - sponge_[i] * g[i];
    }
  }
}

// Energy-like norm: g carries a factor of the wavenumber relative to f, so
// |f_rho| is included to keep the norm roughly constant for healthy waves.
double WaveSolver::norm() const {
  double s = 0.0;
  const std::size_t n = f_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Complex fr = i + 1 < n ? (f_[i + 1] - f_[i]) / h_rho_ : (f_[i] - f_[i - 1]) / h_rho_;
    s += std::norm(f_[i]) + std::norm(fr) + std::norm(g_[i]);
  }
  return std::sqrt(s * h_rho_);
}

void WaveSolver::take_step(double h) {
  const std::size_t n = f_.size();
  const double before = norm();
  rhs(t_, f_, g_, k1f_, k1g_);
  for (std::size_t i = 0; i < n; ++i) {
    tf_[i] = f_[i] + 0.5 * h * k1f_[i];
    tg_[i] = g_[i] + 0.5 * h * k1g_[i];
  }
  rhs(t_ + 0.5 * h, tf_, tg_, k2f_, k2g_);
  for (std::size_t i = 0; i < n; ++i) {
    tf_[i] = f_[i] + 0.5 * h * k2f_[i];
    tg_[i] = g_[i] + 0.5 * h * k2g_[i];
  }
  rhs(t_ + 0.5 * h, tf_, tg_, k3f_, k3g_);
  for (std::size_t i = 0; i < n; ++i) {
    tf_[i] = f_[i] + h * k3f_[i];
    tg_[i] = g_[i] + h * k3g_[i];
  }
  rhs(t_ + h, tf_, tg_, k4f_, k4g_);
  const double w = h / 6.0;
  for (std::size_t i = 0; i < n; ++i) {
    f_[i] += w * (k1f_[i] + 2.0 * k2f_[i] + 2.0 * k3f_[i] + k4f_[i]);
    g_[i] += w * (k1g_[i] + 2.0 * k2g_[i] + 2.0 * k3g_[i] + k4g_[i]);
  }
  t_ += h;
  ++steps_;
  const double after = norm();
  if (!std::isfinite(after) || after > options_.max_growth_per_step * before + 1e-300)
    throw InstabilityError("wave solver norm grew from " + std::to_string(before) + " to " +
                           std::to_string(after) + " at x0 = " + std::to_string(t_));
}

void WaveSolver::step() { take_step(dt_); }

void WaveSolver::advance_to(double t) {
  require(t >= t_, "wave solver cannot step backward");
  while (t - t_ > 1e-12 * dt_) {
    const double h = std::min(dt_, t - t_);
    const bool last = h < dt_ || t - t_ - h <= 1e-12 * dt_;
    take_step(h);
    if (last) t_ = t;
  }
  t_ = t;
}

std::vector<FieldJet> WaveSolver::jets() const {
  const std::size_t n = f_.size();
  std::vector<Complex> ext(n + 2 * kGhost), drho(n);
  fill_ghosts(f_, ext);
  centered_first(ext, drho);
  const double a = profile_(t_);
  std::vector<FieldJet> out(n);
  for (std::size_t i = 0; i < n; ++i)
    out[i] = {f_[i], g_[i] - a * inv_rho_[i] * drho[i], drho[i]};
  return out;
}

FieldState WaveSolver::state() const {
  FieldState s;
  s.x0 = t_;
  const auto j = jets();
  s.value.reserve(j.size());
  s.dvalue_dx0.reserve(j.size());
  for (const auto& x : j) {
    s.value.push_back(x.value);
    s.dvalue_dx0.push_back(x.d_x0);
  }
  return s;
}

FieldState step_wave(const FieldState& state, const RadialGrid& grid,
                     const VelocityProfile& profile) {
  WaveSolver solver(grid, profile, state);
  solver.step();
  return solver.state();
}

namespace {

// C-infinity transition from 0 at x <= 0 to 1 at x >= 1.
double smooth_step(double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double a = std::exp(-1.0 / x);
  const double b = std::exp(-1.0 / (1.0 - x));
  return a / (a + b);
}

}  // namespace

double DataWindow::operator()(double rho) const {
  if (rho >= lo && rho <= hi) return 1.0;
  if (taper <= 0.0) return 0.0;
  if (rho < lo) return smooth_step((rho - (lo - taper)) / taper);
  return smooth_step(((hi + taper) - rho) / taper);
}

DataWindow DataWindow::for_grid(const RadialGrid& grid) {
  const double taper = 0.15;
  return {grid.rho_min + taper, grid.rho_max - grid.sponge_width - taper, taper};
}

SampledField::SampledField(double rho0, double spacing, const std::vector<FieldJet>& jets)
    : rho0_(rho0), rho_hi_(rho0 + spacing * static_cast<double>(jets.size() - 1)) {
  if (jets.size() < 8) throw ResolutionError("interpolation needs at least 8 samples");
  std::vector<double> y(jets.size());
  const auto add = [&](auto get) {
    for (std::size_t i = 0; i < jets.size(); ++i) y[i] = get(jets[i]);
    parts_.emplace_back(y, rho0, spacing);
  };
  add([](const FieldJet& j) { return j.value.real(); });
  add([](const FieldJet& j) { return j.value.imag(); });
  add([](const FieldJet& j) { return j.d_x0.real(); });
  add([](const FieldJet& j) { return j.d_x0.imag(); });
  add([](const FieldJet& j) { return j.d_rho.real(); });
  add([](const FieldJet& j) { return j.d_rho.imag(); });
}

FieldJet SampledField::at(double rho) const {
  const double tol = 1e-9 * (rho_hi_ - rho0_);
  if (!(rho >= rho0_ - tol && rho <= rho_hi_ + tol))
    throw DomainError("field sampled outside its grid at rho = " + std::to_string(rho));
  rho = std::clamp(rho, rho0_, rho_hi_);
  return {{parts_[0](rho), parts_[1](rho)},
          {parts_[2](rho), parts_[3](rho)},
          {parts_[4](rho), parts_[5](rho)}};
}

SampledField sample(const WaveSolver& solver) {
  return SampledField(solver.grid().rho_min, solver.grid().spacing(), solver.jets());
}

FieldState outgoing_mode_data(double eta, const RadialGrid& grid,
                              const VelocityProfile& profile, const DataWindow& window) {
  require(eta < 0.0, "outgoing mode requires eta < 0");
  grid.validate();
  const double a0 = profile(0.0);
  FieldState s;
  s.x0 = 0.0;
  s.value.resize(static_cast<std::size_t>(grid.n_rho));
  s.dvalue_dx0.resize(s.value.size());
  for (int i = 0; i < grid.n_rho; ++i) {
    const double rho = grid.node(i);
    // The plus-family data at wavenumber |eta| is gamma e^{-i eta rho} with
    // time derivative i lambda^-(|eta|) times the value.
    const ModeData d = mode_initial_data({-eta}, ModeFamily::kPlus, rho, a0 / rho);
    const double w = window(rho);
    s.value[static_cast<std::size_t>(i)] = w * d.value;
    s.dvalue_dx0[static_cast<std::size_t>(i)] = w * d.dvalue_dx0;
  }
  return s;
}

ModeHistory solve_mode(double eta, const RadialGrid& grid, const VelocityProfile& profile,
                       const std::vector<double>& output_times,
                       const DataWindow& window, SolverOptions options) {
  require(eta < 0.0, "solve_mode requires eta < 0");
  grid.validate();
  grid.require_resolves(eta);
  require(!output_times.empty(), "solve_mode needs at least one output time");
  require(std::is_sorted(output_times.begin(), output_times.end()) &&
              output_times.front() >= 0.0,
          "output times must be sorted and nonnegative");
  WaveSolver solver(grid, profile, outgoing_mode_data(eta, grid, profile, window), options);
  ModeHistory h;
  h.eta = eta;
  h.dt = solver.dt();
  for (double t : output_times) {
    solver.advance_to(t);
    h.states.push_back(solver.state());
    h.fields.push_back(sample(solver));
  }
  h.steps = solver.steps_taken();
  return h;
}

}  // namespace sonic
