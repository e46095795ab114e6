#include "sonic/special_fn.hpp"

#include <cmath>
#include <numbers>

#include "sonic/error.hpp"

namespace sonic {

namespace {

constexpr double kPi = std::numbers::pi;

// B_{2k} / (2k (2k-1)), k = 1..8.
constexpr double kStirling[] = {
    1.0 / 12.0,         -1.0 / 360.0,        1.0 / 1260.0,   -1.0 / 1680.0,
    1.0 / 1188.0,       -691.0 / 360360.0,   1.0 / 156.0,    -3617.0 / 122400.0,
};

Complex stirling(Complex z) {
  const Complex inv = 1.0 / z;
  const Complex inv2 = inv * inv;
  Complex series = 0.0;
  Complex pow = inv;
  for (double c : kStirling) {
    series += c * pow;
    pow *= inv2;
  }
  return (z - 0.5) * std::log(z) - z + 0.5 * std::log(2.0 * kPi) + series;
}

}  // namespace

Complex log_gamma(Complex z) {
  if (z.real() < 0.5) {
    // Reflection: Gamma(z) Gamma(1 - z) = pi / sin(pi z).
    return std::log(kPi) - std::log(std::sin(kPi * z)) - log_gamma(1.0 - z);
  }
  Complex shift = 0.0;
  while (std::abs(z) < 15.0) {
    shift += std::log(z);
    z += 1.0;
  }
  return stirling(z) - shift;
}

Complex gamma(Complex z) { return std::exp(log_gamma(z)); }

void GammaParams::validate() const {
  require(std::isfinite(alpha) && std::isfinite(eps), "gamma parameters must be finite");
  require(alpha > 0.0, "alpha must be positive");
  require(eps > 0.0 && eps <= 0.5, "eps must lie in (0, 1/2]");
}

Complex gamma0(const GammaParams& p) {
  p.validate();
  const Complex s(1.0 + p.eps, p.alpha);
  const Complex phase(0.5 * kPi * p.alpha, -0.5 * kPi * p.eps);
  return std::exp(log_gamma(s) + phase);
}

double gamma0_abs2(const GammaParams& p) {
  p.validate();
  const Complex s(1.0 + p.eps, p.alpha);
  return std::exp(2.0 * log_gamma(s).real() + kPi * p.alpha);
}

double arg_eta_plus_ia(double eta, double a) {
  require(eta < 0.0, "arg_eta_plus_ia requires eta < 0");
  require(a > 0.0, "arg_eta_plus_ia requires a > 0");
  return kPi - std::asin(a / std::hypot(eta, a));
}

Complex laplace_log_power(double eta, double alpha, double eps, double a) {
  require(a > 0.0, "packet localization rate a must be positive");
  require(eps > -1.0, "laplace_log_power requires eps > -1");
  const Complex s0(eps + 1.0, alpha);
  const Complex log_base = std::log(Complex(eta, a));
  const Complex i_half_pi(0.0, 0.5 * kPi);
  return std::exp(log_gamma(s0) + i_half_pi * s0 - s0 * log_base);
}

Complex packet_fourier(double eta, const GammaParams& p, double a) {
  p.validate();
  return laplace_log_power(eta, p.alpha, p.eps, a);
}

double packet_fourier_abs2(double eta, const GammaParams& p, double a) {
  require(a > 0.0, "packet localization rate a must be positive");
  const double r = std::hypot(eta, a);
  return gamma0_abs2(p) * std::exp(-2.0 * p.alpha * std::asin(a / r)) /
         std::pow(r, 2.0 * p.eps + 2.0);
}

}  // namespace sonic
