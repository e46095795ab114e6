#pragma once

// Klein-Gordon pairing, eikonal projections of the packet, the created
// particle density and its large-a limit.

#include <functional>
#include <span>
#include <vector>

#include "sonic/field.hpp"
#include "sonic/packets_modes.hpp"
#include "sonic/profile_flow.hpp"

namespace sonic {

/// (conj(u) v_t - conj(u_t) v) + (A/rho) (conj(u) v_rho - conj(u_rho) v).
Complex kg_bracket(const FieldJet& u, const FieldJet& v, double a_over_rho);

/// Integrand of <u, v> per unit rho for m = 0 fields: 2 pi i rho * bracket.
Complex kg_integrand(const FieldJet& u, const FieldJet& v, double a_over_rho, double rho);

/// <u, v> at time x0 from samples on a uniform radial grid (composite
/// Simpson, with a 3/8 panel when the interval count is odd). Throws
/// ResolutionError if the sample counts differ or the grid is not uniform.
Complex kg_inner(std::span<const FieldJet> u, std::span<const FieldJet> v,
                 std::span<const double> rho, double x0, const VelocityProfile& profile);

using FieldFn = std::function<FieldJet(double rho)>;

/// <u, v> at time x0 over [rho_lo, rho_hi] by adaptive quadrature.
Complex kg_inner(const FieldFn& u, const FieldFn& v, double x0,
                 const VelocityProfile& profile, double rho_lo, double rho_hi,
                 double tol = 1e-10);

/// Eikonal projections of the packet at wavenumber eta = -eta_abs.
/// c1 = e^{i eta sigma*} i/(sqrt2 (eta^2+1)^{1/4}) (i eta) F(eta), with F
/// the packet Fourier transform. c2 has the same modulus and is oriented so
/// that the created density equals -4 Re(c1 conj(c2)).
struct ProjectionPair {
  Complex c1;
  Complex c2;
};

ProjectionPair eikonal_projections(double eta_abs, const PacketParams& p);

/// 2 eta^2 |Gamma_0|^2 e^{-2 alpha asin(a/|eta+ia|)} / (sqrt(eta^2+1) |eta+ia|^{2eps+2})
/// times amplitude^2.
double creation_density(double eta_abs, const PacketParams& p);

/// -4 Re(c1 conj(c2)) from eikonal_projections.
double creation_density_from_projections(double eta_abs, const PacketParams& p);

struct SpectrumTable {
  std::vector<double> eta;
  std::vector<double> density;
  std::vector<Complex> c1;
  std::vector<Complex> c2;
  double total = 0.0;
  double total_normalized = 0.0;
  double norm = 0.0;
};

/// |eta| grid for tabulation: n points with eta = a t / (1 - t), t uniform
/// in [0, t_max], t_max chosen so the last point is eta_max_factor * a.
std::vector<double> spectrum_eta_grid(double a, int n, double eta_max_factor);

/// Per-eta densities (parallel map, results in grid order) plus the adaptive
/// total and normalization.
SpectrumTable build_spectrum(const PacketParams& p, const std::vector<double>& eta_grid,
                             double tol = 1e-9);

struct TotalNumber {
  double value = 0.0;
  double head = 0.0;      ///< integral over (0, eta_split)
  double tail = 0.0;      ///< integral over (eta_split, inf)
  double eta_split = 0.0;
  double error = 0.0;
};

/// Integral of creation_density over (0, inf): adaptive Gauss-Kronrod on
/// (0, 20a) and a double-exponential rule for the algebraic tail.
TotalNumber total_number(const PacketParams& p, double tol = 1e-9);

/// int_0^inf eta (eta^2+1)^{-eps-1} e^{-2 alpha asin(1/sqrt(eta^2+1))} d eta.
double limit_integral(double alpha, double eps, double tol = 1e-11);

/// Large-a limit of the normalized particle number:
///   2^{2eps} |Gamma_0|^2 / (2 pi alpha Gamma(2 eps)) * limit_integral.
double normalized_number_limit(double alpha, double eps, double tol = 1e-11);

/// Alternative closed form with prefactor 2^{eps} and exponent
/// e^{-2 asin(...)} (no alpha), reported next to the limit for comparison.
double normalized_number_limit_variant(double alpha, double eps, double tol = 1e-11);

/// 2^{2eps} * 2 / (4 pi alpha Gamma(2 eps)): ratio of the limit prefactor to
/// |Gamma_0|^2 computed from the leading term over the closed-form norm.
double limit_prefactor(double alpha, double eps);

struct SweepRow {
  double a;
  double total;
  double total_normalized;
  double limit;
  double residual;  ///< total_normalized - limit
};

struct LimitSweep {
  std::vector<SweepRow> rows;
  double limit = 0.0;
  double limit_variant = 0.0;
  /// Exponent p of a least-squares fit |residual| ~ K a^{-p}; NaN with fewer
  /// than two rows.
  double fitted_exponent = 0.0;
  double fit_prefactor = 0.0;
};

LimitSweep limit_sweep(double alpha, double eps, const std::vector<double>& a_values,
                       double tol = 1e-10);

struct PowerFit {
  double exponent;   ///< y ~ K x^{-exponent}
  double prefactor;  ///< K
};

/// Least-squares line through (log x, log |y|).
PowerFit fit_power_law(std::span<const double> x, std::span<const double> y);

}  // namespace sonic
