#pragma once

#include <complex>

namespace sonic {

using Complex = std::complex<double>;

/// A branch of log Gamma(z), continuous along horizontal lines in the right
/// half plane. exp(log_gamma(z)) is accurate to ~1e-15 relative.
Complex log_gamma(Complex z);

/// Complex Gamma function.
Complex gamma(Complex z);

/// Exponents of the logarithmic-phase packet: phase strength alpha and
/// regularization eps.
struct GammaParams {
  double alpha = 1.0;
  double eps = 0.25;

  /// Throws DomainError unless alpha > 0 and eps in (0, 1/2].
  void validate() const;
};

/// Gamma_0(i alpha + eps + 1) = exp(-i pi/2 (i alpha + eps)) Gamma(1 + eps + i alpha).
Complex gamma0(const GammaParams& p);

/// |Gamma_0(i alpha + eps + 1)|^2 = e^{pi alpha} |Gamma(1 + eps + i alpha)|^2.
double gamma0_abs2(const GammaParams& p);

/// Principal argument of eta + i a for eta < 0, a > 0, as
/// pi - asin(a / sqrt(eta^2 + a^2)); lies in (pi/2, pi).
double arg_eta_plus_ia(double eta, double a);

/// Closed form of  int_0^inf e^{i eta s} s^{i alpha + eps} e^{-a s} ds
///   = Gamma(s0) e^{i pi s0 / 2} / (eta + i a)^{s0},   s0 = i alpha + eps + 1,
/// principal branch with arg(eta + i a) in (0, pi). Valid for any real
/// alpha and eta, eps > -1, a > 0.
Complex laplace_log_power(double eta, double alpha, double eps, double a);

/// Fourier transform of the packet profile, evaluated at -eta (the sign
/// convention of the projection integrals): laplace_log_power with validated
/// parameters.
Complex packet_fourier(double eta, const GammaParams& p, double a);

/// |packet_fourier|^2 written as
///   |Gamma_0|^2 exp(-2 alpha asin(a/|eta + i a|)) / |eta + i a|^{2 eps + 2},
/// which holds for eta <= 0.
double packet_fourier_abs2(double eta, const GammaParams& p, double a);

}  // namespace sonic
