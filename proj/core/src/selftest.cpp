#include "sonic/selftest.hpp"

#include <cmath>
#include <numbers>

#include "sonic/kg_spectrum.hpp"
#include "sonic/oracles.hpp"
#include "sonic/packets_modes.hpp"
#include "sonic/profile_flow.hpp"
#include "sonic/special_fn.hpp"

namespace sonic {

namespace {

SelfCheck make(std::string name, double value, double reference, double tol) {
  const double err = std::abs(value - reference) / std::max(std::abs(reference), 1e-300);
  return {std::move(name), value, reference, err, tol, err <= tol};
}

// Relative error of a complex value; the row reports moduli.
SelfCheck make_complex(std::string name, Complex value, Complex reference, double tol) {
  const double err = std::abs(value - reference) / std::abs(reference);
  return {std::move(name), std::abs(value), std::abs(reference), err, tol, err <= tol};
}

}  // namespace

std::vector<SelfCheck> run_selftest() {
  constexpr double pi = std::numbers::pi;
  std::vector<SelfCheck> out;

  out.push_back(make("log_gamma(7.5) vs lgamma", log_gamma(Complex(7.5, 0.0)).real(),
                     std::lgamma(7.5), 1e-14));

  {
    const double alpha = 1.0;
    out.push_back(make("|Gamma0|^2 small-eps limit", gamma0_abs2({alpha, 1e-6}),
                       2.0 * pi * alpha / (1.0 - std::exp(-2.0 * pi * alpha)), 1e-4));
  }
  out.push_back(make_complex("Gamma0 vs rotated-contour quadrature", gamma0({0.7, 0.3}),
                             oracle::gamma0_contour(0.7, 0.3, pi / 4), 1e-10));
  out.push_back(make_complex("packet Fourier transform vs quadrature",
                             packet_fourier(-5.0, {1.0, 0.25}, 8.0),
                             oracle::packet_fourier_quadrature(-5.0, 1.0, 0.25, 8.0), 1e-9));
  {
    FlowConfig flow;
    flow.profile = VelocityProfile::constant(-1.0);
    PacketParams p;
    p.sigma_star = 1.0;
    out.push_back(make("packet KG norm numeric vs closed", packet_norm(p, flow, true),
                       packet_norm(p, flow, false), 1e-8));
  }
  {
    PacketParams p;
    out.push_back(make("density from projections vs closed form",
                       creation_density_from_projections(7.0, p), creation_density(7.0, p),
                       1e-12));
  }
  {
    FlowConfig flow;
    flow.profile = VelocityProfile::constant(-1.0);
    out.push_back(make("separatrix for A = -1", find_separatrix(flow).sigma_star, 1.0, 1e-9));
  }
  {
    // A = -1: sigma + ln(sigma - 1) = rho + ln(rho - 1) - x0.
    FlowConfig flow;
    flow.profile = VelocityProfile::constant(-1.0);
    const double rho = 2.0, x0 = 0.5;
    const auto sv = sigma_of(rho, x0, flow);
    out.push_back(make("sigma_of first integral for A = -1",
                       sv.sigma + std::log(sv.sigma - 1.0),
                       rho + std::log(rho - 1.0) - x0, 1e-9));
  }
  return out;
}

}  // namespace sonic
