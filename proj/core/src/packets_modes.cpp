#include "sonic/packets_modes.hpp"

#include <cmath>
#include <numbers>

#include "sonic/error.hpp"
#include "sonic/kg_spectrum.hpp"
#include "sonic/quadrature.hpp"

namespace sonic {

void PacketParams::validate() const {
  gamma_params().validate();
  require(a > 0.0 && std::isfinite(a), "packet rate a must be positive");
  require(sigma_star > 0.0, "sigma_star must be positive");
  require(amplitude > 0.0 && std::isfinite(amplitude), "packet amplitude must be positive");
}

Complex packet_profile_offset(double s, const PacketParams& p) {
  if (!(s > 0.0)) return 0.0;
  return p.amplitude * std::exp(Complex(p.eps, p.alpha) * std::log(s) - p.a * s);
}

Complex eval_packet_profile(double sigma, const PacketParams& p) {
  return packet_profile_offset(sigma - p.sigma_star, p);
}

Complex packet_profile_derivative(double s, const PacketParams& p) {
  if (!(s > 0.0)) return 0.0;
  return packet_profile_offset(s, p) * (Complex(p.eps, p.alpha) / s - p.a);
}

FieldJet packet_jet(double rho, double s, double dsigma_drho, double dsigma_dx0,
                    const PacketParams& p) {
  if (!(s > 0.0)) return {};
  const double r_half = 1.0 / std::sqrt(rho);
  const Complex c = packet_profile_offset(s, p);
  const Complex dc = packet_profile_derivative(s, p);
  return {r_half * c, r_half * dc * dsigma_dx0,
          -0.5 * r_half / rho * c + r_half * dc * dsigma_drho};
}

Complex eval_packet(double rho, double x0, const PacketParams& p, const FlowConfig& flow) {
  const auto sv = sigma_of(rho, x0, flow);
  return packet_profile_offset(sv.sigma - p.sigma_star, p) / std::sqrt(rho);
}

FieldJet eval_packet_jet(double rho, double x0, const PacketParams& p,
                         const FlowConfig& flow) {
  const auto sv = sigma_of(rho, x0, flow);
  return packet_jet(rho, sv.sigma - p.sigma_star, sv.dsigma_drho, sv.dsigma_dx0, p);
}

double mode_gamma(double rho, double eta) {
  require(rho > 0.0, "mode_gamma requires rho > 0");
  return 1.0 / (std::sqrt(2.0 * rho) * std::pow(eta * eta + 1.0, 0.25));
}

double mode_lambda(int sign, double eta, double a0_over_rho) {
  return -a0_over_rho * eta + (sign >= 0 ? 1.0 : -1.0) * std::sqrt(eta * eta + 1.0);
}

ModeData mode_initial_data(const ModeSpec& mode, ModeFamily family, double rho,
                           double a0_over_rho) {
  require(std::isfinite(mode.eta), "mode wavenumber must be finite");
  const Complex v = mode_gamma(rho, mode.eta) * std::exp(Complex(0.0, mode.eta * rho));
  const double lambda =
      mode_lambda(family == ModeFamily::kPlus ? -1 : +1, mode.eta, a0_over_rho);
  return {v, Complex(0.0, lambda) * v};
}

Complex eval_eikonal(double rho, double x0, double eta, const FlowConfig& flow) {
  require(eta < 0.0, "eikonal requires eta < 0");
  const auto sv = sigma_of(rho, x0, flow);
  return mode_gamma(rho, eta) * std::exp(Complex(0.0, -eta * sv.sigma));
}

FieldJet eval_eikonal_jet(double rho, double x0, double eta, const FlowConfig& flow) {
  require(eta < 0.0, "eikonal requires eta < 0");
  const auto sv = sigma_of(rho, x0, flow);
  const double g = mode_gamma(rho, eta);
  const double dg = -0.5 * g / rho;
  const Complex e = std::exp(Complex(0.0, -eta * sv.sigma));
  const Complex ie(0.0, -eta);
  return {g * e, g * ie * sv.dsigma_dx0 * e, (dg + g * ie * sv.dsigma_drho) * e};
}

double packet_norm(const PacketParams& p, const FlowConfig& flow, bool numeric,
                   double tol) {
  p.validate();
  const double amp2 = p.amplitude * p.amplitude;
  if (!numeric) {
    return amp2 * 4.0 * std::numbers::pi * p.alpha * std::tgamma(2.0 * p.eps) /
           std::pow(2.0 * p.a, 2.0 * p.eps);
  }
  // At x0 = 0: sigma = rho, d sigma/d rho = 1, d sigma/d x0 = -(A(0)/rho + 1).
  const double a0 = flow.profile(0.0);
  auto integrand = [&](double s) -> double {
    const double rho = p.sigma_star + s;
    const double a_over_rho = a0 / rho;
    const FieldJet u = packet_jet(rho, s, 1.0, -(a_over_rho + 1.0), p);
    return kg_integrand(u, u, a_over_rho, rho).real();
  };
  const double length = 40.0 / p.a;
  const auto est = quad::finite(quad::RealFn(integrand), 0.0, length, tol);
  return est.value;
}

std::vector<ProfileSample> sample_packet_profile(const PacketParams& p, double span,
                                                 int n) {
  require(n >= 2 && span > 0.0, "profile sampling needs n >= 2 and span > 0");
  std::vector<ProfileSample> out;
  out.reserve(static_cast<std::size_t>(n));
  for (int k = 0; k < n; ++k) {
    const double sigma = p.sigma_star + span * k / (n - 1);
    out.push_back({sigma, eval_packet_profile(sigma, p)});
  }
  return out;
}

std::vector<NormRow> norm_table(PacketParams p, const std::vector<double>& a_values,
                                const FlowConfig& flow) {
  std::vector<NormRow> rows;
  for (double a : a_values) {
    p.a = a;
    const double closed = packet_norm(p, flow, false);
    const double numeric = packet_norm(p, flow, true);
    rows.push_back({a, closed, numeric, std::abs(numeric - closed) / closed});
  }
  return rows;
}

}  // namespace sonic
