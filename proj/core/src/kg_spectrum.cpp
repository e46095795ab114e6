#include "sonic/kg_spectrum.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sonic/error.hpp"
#include "sonic/parallel.hpp"
#include "sonic/quadrature.hpp"
#include "sonic/special_fn.hpp"

namespace sonic {

namespace {
constexpr double kPi = std::numbers::pi;
}

Complex kg_bracket(const FieldJet& u, const FieldJet& v, double a_over_rho) {
  const Complex ub = std::conj(u.value);
  return (ub * v.d_x0 - std::conj(u.d_x0) * v.value) +
         a_over_rho * (ub * v.d_rho - std::conj(u.d_rho) * v.value);
}

Complex kg_integrand(const FieldJet& u, const FieldJet& v, double a_over_rho, double rho) {
  return Complex(0.0, 2.0 * kPi * rho) * kg_bracket(u, v, a_over_rho);
}

Complex kg_inner(std::span<const FieldJet> u, std::span<const FieldJet> v,
                 std::span<const double> rho, double x0, const VelocityProfile& profile) {
  const std::size_t n = rho.size();
  if (u.size() != n || v.size() != n) {
    std::ostringstream os;
    os << "kg_inner: grid mismatch (" << u.size() << ", " << v.size() << " samples on "
       << n << " nodes)";
    throw ResolutionError(os.str());
  }
  if (n < 3) throw ResolutionError("kg_inner needs at least 3 grid nodes");
  const double h = (rho[n - 1] - rho[0]) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i) {
    if (std::abs((rho[i] - rho[i - 1]) - h) > 1e-8 * h)
      throw ResolutionError("kg_inner: radial grid is not uniform");
  }
  const double a = profile(x0);
  auto f = [&](std::size_t i) { return kg_integrand(u[i], v[i], a / rho[i], rho[i]); };

  const std::size_t intervals = n - 1;
  const std::size_t simpson_end = intervals % 2 == 0 ? intervals : intervals - 3;
  Complex sum = 0.0;
  if (simpson_end >= 2) {
    Complex acc = f(0) + f(simpson_end);
    for (std::size_t i = 1; i < simpson_end; ++i) acc += (i % 2 == 1 ? 4.0 : 2.0) * f(i);
    sum += acc * (h / 3.0);
  }
  if (simpson_end != intervals) {
    const std::size_t k = simpson_end;
    sum += (3.0 * h / 8.0) * (f(k) + 3.0 * f(k + 1) + 3.0 * f(k + 2) + f(k + 3));
  }
  return sum;
}

Complex kg_inner(const FieldFn& u, const FieldFn& v, double x0,
                 const VelocityProfile& profile, double rho_lo, double rho_hi, double tol) {
  require(rho_lo > 0.0 && rho_hi > rho_lo, "kg_inner: need 0 < rho_lo < rho_hi");
  const double a = profile(x0);
  auto integrand = [&](double rho) -> Complex {
    return kg_integrand(u(rho), v(rho), a / rho, rho);
  };
  return quad::finite(quad::ComplexFn(integrand), rho_lo, rho_hi, tol).value;
}

ProjectionPair eikonal_projections(double eta_abs, const PacketParams& p) {
  require(eta_abs >= 0.0, "eikonal_projections requires eta_abs >= 0");
  p.validate();
  if (eta_abs == 0.0) return {};
  const double eta = -eta_abs;
  const Complex i(0.0, 1.0);
  const Complex f = p.amplitude * packet_fourier(eta, p.gamma_params(), p.a);
  const Complex pre =
      std::exp(i * (eta * p.sigma_star)) * i / (std::sqrt(2.0) * std::pow(eta * eta + 1.0, 0.25));
  const Complex c1 = pre * (i * eta) * f;
  return {c1, -c1};
}

double creation_density(double eta_abs, const PacketParams& p) {
  require(eta_abs >= 0.0, "creation_density requires eta_abs >= 0");
  p.validate();
  if (eta_abs == 0.0) return 0.0;
  const double r = std::hypot(eta_abs, p.a);
  const double amp2 = p.amplitude * p.amplitude;
  return amp2 * 2.0 * eta_abs * eta_abs * gamma0_abs2(p.gamma_params()) *
         std::exp(-2.0 * p.alpha * std::atan2(p.a, eta_abs)) /
         (std::sqrt(eta_abs * eta_abs + 1.0) * std::pow(r, 2.0 * p.eps + 2.0));
}

double creation_density_from_projections(double eta_abs, const PacketParams& p) {
  const auto [c1, c2] = eikonal_projections(eta_abs, p);
  return -4.0 * (c1 * std::conj(c2)).real();
}

std::vector<double> spectrum_eta_grid(double a, int n, double eta_max_factor) {
  require(a > 0.0 && n >= 2 && eta_max_factor > 0.0, "invalid spectrum grid request");
  const double t_max = eta_max_factor / (1.0 + eta_max_factor);
  std::vector<double> eta(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double t = t_max * k / (n - 1);
    eta[static_cast<std::size_t>(k)] = a * t / (1.0 - t);
  }
  return eta;
}

SpectrumTable build_spectrum(const PacketParams& p, const std::vector<double>& eta_grid,
                             double tol) {
  p.validate();
  SpectrumTable t;
  t.eta = eta_grid;
  const auto pairs = parallel_map<ProjectionPair>(
      eta_grid.size(), [&](std::size_t k) { return eikonal_projections(eta_grid[k], p); });
  t.density = parallel_map<double>(
      eta_grid.size(), [&](std::size_t k) { return creation_density(eta_grid[k], p); });
  t.c1.reserve(pairs.size());
  t.c2.reserve(pairs.size());
  for (const auto& pr : pairs) {
    t.c1.push_back(pr.c1);
    t.c2.push_back(pr.c2);
  }
  t.total = total_number(p, tol).value;
  t.norm = packet_norm(p, FlowConfig{}, false);
  t.total_normalized = t.total / t.norm;
  return t;
}

TotalNumber total_number(const PacketParams& p, double tol) {
  p.validate();
  TotalNumber out;
  out.eta_split = 20.0 * p.a;
  const quad::RealFn density = [&](double eta) { return creation_density(eta, p); };
  // Split the head at the density peak region so each panel is smooth.
  double head = 0.0, err = 0.0;
  const double edges[] = {0.0, p.a, 4.0 * p.a, out.eta_split};
  for (int k = 0; k < 3; ++k) {
    const auto e = quad::kronrod(density, edges[k], edges[k + 1], tol, 20);
    head += e.value;
    err += e.error;
  }
  const auto tail = quad::semi_infinite(density, out.eta_split, tol);
  out.head = head;
  out.tail = tail.value;
  out.value = head + tail.value;
  out.error = err + tail.error;
  quad::check("total_number", out.value, out.error, 100.0 * tol);
  return out;
}

double limit_integral(double alpha, double eps, double tol) {
  GammaParams{alpha, eps}.validate();
  const quad::RealFn f = [=](double eta) {
    return eta * std::pow(eta * eta + 1.0, -eps - 1.0) *
           std::exp(-2.0 * alpha * std::atan2(1.0, eta));
  };
  return quad::kronrod(f, 0.0, 1.0, tol).value + quad::semi_infinite(f, 1.0, tol).value;
}

double limit_prefactor(double alpha, double eps) {
  return std::pow(2.0, 2.0 * eps) * 2.0 / (4.0 * kPi * alpha * std::tgamma(2.0 * eps));
}

double normalized_number_limit(double alpha, double eps, double tol) {
  const GammaParams g{alpha, eps};
  g.validate();
  return std::pow(2.0, 2.0 * eps) * gamma0_abs2(g) / (2.0 * kPi * alpha * std::tgamma(2.0 * eps)) *
         limit_integral(alpha, eps, tol);
}

double normalized_number_limit_variant(double alpha, double eps, double tol) {
  const GammaParams g{alpha, eps};
  g.validate();
  const quad::RealFn f = [=](double eta) {
    return eta * std::pow(eta * eta + 1.0, -eps - 1.0) * std::exp(-2.0 * std::atan2(1.0, eta));
  };
  const double integral =
      quad::kronrod(f, 0.0, 1.0, tol).value + quad::semi_infinite(f, 1.0, tol).value;
  return std::pow(2.0, eps) * gamma0_abs2(g) / (2.0 * kPi * alpha * std::tgamma(2.0 * eps)) *
         integral;
}

PowerFit fit_power_law(std::span<const double> x, std::span<const double> y) {
  require(x.size() == y.size(), "fit_power_law: size mismatch");
  const std::size_t n = x.size();
  if (n < 2) return {std::nan(""), std::nan("")};
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t k = 0; k < n; ++k) {
    const double lx = std::log(x[k]);
    const double ly = std::log(std::abs(y[k]));
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  const double denom = n * sxx - sx * sx;
  if (denom == 0.0) return {std::nan(""), std::nan("")};
  const double slope = (n * sxy - sx * sy) / denom;
  const double icpt = (sy - slope * sx) / n;
  return {-slope, std::exp(icpt)};
}

LimitSweep limit_sweep(double alpha, double eps, const std::vector<double>& a_values,
                       double tol) {
  LimitSweep out;
  out.limit = normalized_number_limit(alpha, eps);
  out.limit_variant = normalized_number_limit_variant(alpha, eps);
  out.rows = parallel_map<SweepRow>(a_values.size(), [&](std::size_t k) {
    const PacketParams p{alpha, a_values[k], eps, 1.0, 1.0};
    const double total = total_number(p, tol).value;
    const double norm = packet_norm(p, FlowConfig{}, false);
    const double normalized = total / norm;
    return SweepRow{p.a, total, normalized, out.limit, normalized - out.limit};
  });
  std::vector<double> xs, ys;
  for (const auto& r : out.rows) {
    xs.push_back(r.a);
    ys.push_back(r.residual);
  }
  const auto fit = fit_power_law(xs, ys);
  out.fitted_exponent = fit.exponent;
  out.fit_prefactor = fit.prefactor;
  return out;
}

}  // namespace sonic
