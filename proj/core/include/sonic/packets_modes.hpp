#pragma once

// Horizon-hugging wave packet, radial plane-wave modes (m = 0) and the
// eikonal approximation of the outgoing mode.

#include <vector>

#include "sonic/field.hpp"
#include "sonic/profile_flow.hpp"
#include "sonic/special_fn.hpp"

namespace sonic {

/// Packet C0 = rho^{-1/2} C01(sigma(rho, x0)) with
///   C01(sigma) = amplitude * s^{eps + i alpha} e^{-a s} theta(s),  s = sigma - sigma*.
struct PacketParams {
  double alpha = 1.0;
  double a = 8.0;
  double eps = 0.25;
  double sigma_star = 1.0;
  double amplitude = 1.0;

  void validate() const;
  GammaParams gamma_params() const { return {alpha, eps}; }
};

/// C01 at sigma; zero for sigma <= sigma*.
Complex eval_packet_profile(double sigma, const PacketParams& p);

/// C01 as a function of the offset s = sigma - sigma*; zero for s <= 0.
Complex packet_profile_offset(double s, const PacketParams& p);

/// d C01 / d sigma at offset s > 0.
Complex packet_profile_derivative(double s, const PacketParams& p);

/// Packet and its derivatives given the characteristic coordinate data at
/// the point. `s` is sigma - sigma*, passed separately so callers can keep it
/// exact near the horizon.
FieldJet packet_jet(double rho, double s, double dsigma_drho, double dsigma_dx0,
                    const PacketParams& p);

Complex eval_packet(double rho, double x0, const PacketParams& p, const FlowConfig& flow);
FieldJet eval_packet_jet(double rho, double x0, const PacketParams& p,
                         const FlowConfig& flow);

enum class ModeFamily { kPlus, kMinus };

struct ModeSpec {
  double eta = -1.0;  ///< radial wavenumber; m is fixed to 0
};

/// gamma = (eta^2 + 1)^{-1/4} / (sqrt2 sqrt(rho)).
double mode_gamma(double rho, double eta);

/// lambda^{+/-}(eta) = -(A(0)/rho) eta +/- sqrt(eta^2 + 1).
double mode_lambda(int sign, double eta, double a0_over_rho);

struct ModeData {
  Complex value;
  Complex dvalue_dx0;
};

/// Plane-wave Cauchy data at x0=0: value gamma e^{i eta rho} and time
/// derivative i lambda^{-} (plus family) or i lambda^{+} (minus family) times
/// the value.
ModeData mode_initial_data(const ModeSpec& mode, ModeFamily family, double rho,
                           double a0_over_rho);

/// Eikonal E = gamma(rho, eta) e^{-i eta sigma(rho, x0)}, eta < 0.
Complex eval_eikonal(double rho, double x0, double eta, const FlowConfig& flow);
FieldJet eval_eikonal_jet(double rho, double x0, double eta, const FlowConfig& flow);

/// KG norm <C0, C0>. Closed form 4 pi alpha Gamma(2 eps) / (2a)^{2 eps}
/// (times amplitude^2); the numeric path integrates the full KG bracket of
/// the packet at x0 = 0.
double packet_norm(const PacketParams& p, const FlowConfig& flow, bool numeric,
                   double tol = 1e-12);

struct ProfileSample {
  double sigma;
  Complex value;
};

/// C01 on `n` uniform samples of sigma in [sigma*, sigma* + span].
std::vector<ProfileSample> sample_packet_profile(const PacketParams& p, double span,
                                                 int n);

struct NormRow {
  double a;
  double norm_closed;
  double norm_numeric;
  double rel_err;
};

std::vector<NormRow> norm_table(PacketParams p, const std::vector<double>& a_values,
                                const FlowConfig& flow);

}  // namespace sonic
