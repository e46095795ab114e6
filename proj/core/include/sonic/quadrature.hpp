#pragma once

// Thin wrappers over Boost.Math double-exponential and Gauss-Kronrod
// quadrature that turn unmet tolerances into ToleranceError.

#include <complex>
#include <functional>

namespace sonic::quad {

using Complex = std::complex<double>;
using RealFn = std::function<double(double)>;
using ComplexFn = std::function<Complex(double)>;

struct Estimate {
  double value = 0.0;
  double error = 0.0;
};

struct ComplexEstimate {
  Complex value{};
  double error = 0.0;
};

/// Integral over [a, b]; tolerates integrable endpoint singularities.
ComplexEstimate finite(const ComplexFn& f, double a, double b, double tol);
Estimate finite(const RealFn& f, double a, double b, double tol);

/// Integral over [a, inf); tolerates algebraic decay and a singular left end.
ComplexEstimate semi_infinite(const ComplexFn& f, double a, double tol);
Estimate semi_infinite(const RealFn& f, double a, double tol);

/// Adaptive 61-point Gauss-Kronrod over [a, b]; for smooth oscillatory parts.
ComplexEstimate kronrod(const ComplexFn& f, double a, double b, double tol,
                        unsigned max_depth = 20);
Estimate kronrod(const RealFn& f, double a, double b, double tol,
                 unsigned max_depth = 20);

/// int_0^L g(s) ds for integrands with an s^{eps + i alpha}-type end at s=0
/// and oscillation along s: [0, h0] in the variable u = -ln(s/h0) with the
/// double-exponential rule, the rest by adaptive Gauss-Kronrod.
Complex singular_oscillatory(const ComplexFn& g, double length, double h0, double tol);

/// Throws ToleranceError when err > tol * max(|value|, floor).
void check(const char* what, double value_abs, double err, double tol,
           double floor = 1e-300);

}  // namespace sonic::quad
