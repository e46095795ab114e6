#include "sonic/oracles.hpp"

#include <algorithm>
#include <cmath>

#include "sonic/quadrature.hpp"

namespace sonic::oracle {

Complex gamma0_contour(double alpha, double eps, double theta, double tol) {
  const Complex i(0.0, 1.0);
  const Complex rot = std::exp(-i * theta);
  const Complex expo(eps, alpha);
  auto integrand = [&](double t) -> Complex {
    if (t == 0.0) return 0.0;
    const Complex log_y = std::log(t) - i * theta;
    return i * rot * std::exp(expo * log_y - i * t * rot);
  };
  const auto head = quad::semi_infinite(
      [&](double u) {
        const double t = std::exp(-u);
        return integrand(t) * t;
      },
      0.0, tol);
  const auto tail = quad::semi_infinite(integrand, 1.0, tol);
  return head.value + tail.value;
}

Complex packet_fourier_quadrature(double eta, double alpha, double eps, double a,
                                  double tol) {
  const Complex expo(eps, alpha);
  auto g = [=](double s) -> Complex {
    return std::exp(Complex(-a * s, eta * s) + expo * std::log(s));
  };
  const double length = 40.0 / a;
  const double h0 = 1.0 / std::max({std::abs(eta), a, 1.0});
  return quad::singular_oscillatory(g, length, h0, tol);
}

Complex eikonal_projection_quadrature(double eta, double alpha, double eps, double a,
                                      double sigma_star, double tol) {
  const Complex i(0.0, 1.0);
  const Complex expo(eps, alpha);
  const Complex pre = i / (std::sqrt(2.0) * std::pow(eta * eta + 1.0, 0.25));
  auto g = [=](double s) -> Complex {
    const Complex c01 = std::exp(expo * std::log(s) - a * s);
    const Complex dc01 = c01 * (expo / s - a);
    return pre * std::exp(i * eta * (sigma_star + s)) * (-dc01);
  };
  const double length = 40.0 / a;
  const double h0 = 1.0 / std::max({std::abs(eta), a, 1.0});
  return quad::singular_oscillatory(g, length, h0, tol);
}

}  // namespace sonic::oracle
