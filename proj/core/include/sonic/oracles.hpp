#pragma once

// Direct-quadrature evaluations of quantities that the library also computes
// in closed form. These never call the closed forms they are compared with.

#include <complex>
#include <functional>

namespace sonic::oracle {

using Complex = std::complex<double>;

/// Gamma_0(i alpha + eps + 1) = i int_0^inf y^{i alpha + eps} e^{-i y} dy,
/// evaluated on the rotated ray y = t e^{-i theta}, 0 < theta <= pi/2.
Complex gamma0_contour(double alpha, double eps, double theta, double tol = 1e-13);

/// int_0^{40/a} e^{i eta s} s^{i alpha + eps} e^{-a s} ds.
Complex packet_fourier_quadrature(double eta, double alpha, double eps, double a,
                                  double tol = 1e-13);

/// Eikonal projection of the packet derivative,
///   int_0^{40/a} i/(sqrt2 (eta^2+1)^{1/4}) e^{i eta (sigma*+s)} (-d/ds C01(s)) ds,
/// integrated without parts.
Complex eikonal_projection_quadrature(double eta, double alpha, double eps, double a,
                                      double sigma_star, double tol = 1e-12);

}  // namespace sonic::oracle
