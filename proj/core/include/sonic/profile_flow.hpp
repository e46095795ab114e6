#pragma once

// Background radial flow A(x0)/rho and its outgoing characteristics
// d rho / d x0 = A(x0)/rho + 1. The black-hole horizon is the separatrix
// between characteristics escaping to infinity and those captured at rho -> 0.

#include <string>
#include <utility>
#include <vector>

namespace sonic {

enum class ProfileForm { kConstant, kSmoothStep };

std::string to_string(ProfileForm form);
ProfileForm profile_form_from_string(const std::string& s);

/// Flow strength A(x0). The smooth step is
///   A(x0) = (a_plus + a_minus)/2 + (a_plus - a_minus)/2 * tanh(x0 / tau),
/// the constant form returns a_minus everywhere (a_plus must equal a_minus).
struct VelocityProfile {
  double a_minus = -1.2;
  double a_plus = -0.8;
  double tau = 1.0;
  ProfileForm form = ProfileForm::kSmoothStep;

  static VelocityProfile constant(double a);
  static VelocityProfile smooth_step(double a_minus, double a_plus, double tau);

  /// Throws DomainError unless both limits are negative and tau > 0.
  void validate() const;

  double operator()(double x0) const;
  double limit_minus() const { return a_minus; }
  double limit_plus() const { return form == ProfileForm::kConstant ? a_minus : a_plus; }
  /// sup over x0 of |A(x0)|.
  double max_abs() const;

  bool operator==(const VelocityProfile&) const = default;
};

struct FlowConfig {
  VelocityProfile profile;
  double ode_tol = 1e-12;
  double rho_min = 1e-3;

  void validate() const;
};

/// Sampled horizon rho*(x0) on a uniform x0 grid.
struct HorizonCurve {
  std::vector<double> x0;
  std::vector<double> rho;

  /// Linear interpolation; throws DomainError outside the sampled range.
  double at(double x) const;
};

struct Separatrix {
  double sigma_star = 0.0;
  HorizonCurve horizon;
  /// |rho*(-T) - |A(-inf)|| and |rho*(T) - |A(+inf)|| at the curve ends.
  double limit_error_minus = 0.0;
  double limit_error_plus = 0.0;
  int bisection_steps = 0;
};

struct FlowMap {
  FlowConfig config;
  double sigma_star = 0.0;
  HorizonCurve horizon;
};

/// A(x0)/rho + 1. Throws DomainError if rho <= 0.
double characteristic_rhs(double rho, double x0, const VelocityProfile& profile);

struct CharacteristicPath {
  std::vector<double> x0;
  std::vector<double> rho;
  bool captured = false;
  double end_rho() const { return rho.back(); }
};

/// Adaptive integration of a characteristic from (x0_from, sigma0). Stops
/// early with `captured` set once rho drops below rho_min.
CharacteristicPath integrate_characteristic(double sigma0, double x0_from,
                                            double x0_to, const FlowConfig& flow);

/// rho(sigma, x0): position at time x0 of the characteristic with rho(0)=sigma.
/// Throws CaptureError if that characteristic is captured before x0.
double rho_of(double sigma, double x0, const FlowConfig& flow);

enum class Fate { kEscape, kCapture };

/// Classifies the characteristic starting at rho(0)=sigma0 by integrating
/// forward in windows of 20*tau: escape once rho > 2|A(+inf)|, capture once
/// rho < rho_min. Undecided after the last window falls back on the sign of
/// rho - |A(+inf)|.
Fate classify(double sigma0, const FlowConfig& flow);

struct SeparatrixOptions {
  double sigma_lo = 0.0;  ///< 0 selects 0.05 * min|A|.
  double sigma_hi = 0.0;  ///< 0 selects 2 * max|A| + 1.
  double x0_horizon_max = 10.0;
  double x0_step = 0.05;
  double tol = 1e-12;
};

/// Bisection on the x0=0 value of the separatrix, then integrates the horizon
/// curve backward and forward from sigma*. Throws BracketError when both
/// bracket ends share a fate.
Separatrix find_separatrix(const FlowConfig& flow, const SeparatrixOptions& opt = {});

FlowMap make_flow_map(const FlowConfig& flow, const SeparatrixOptions& opt = {});

struct SigmaValue {
  double sigma;
  double dsigma_drho;
  /// d sigma / d x0 = -(A/rho + 1) dsigma_drho.
  double dsigma_dx0;
};

/// Characteristic coordinate sigma(rho, x0): the x0=0 value of the
/// characteristic through (rho, x0), with d sigma/d rho from the tangent
/// equation integrated alongside. Throws CaptureError if the characteristic
/// leaves [rho_min, inf) before reaching x0=0.
SigmaValue sigma_of(double rho, double x0, const FlowConfig& flow);

}  // namespace sonic
