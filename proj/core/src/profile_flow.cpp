#include "sonic/profile_flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sonic/error.hpp"
#include "sonic/ode.hpp"

namespace sonic {

std::string to_string(ProfileForm form) {
  return form == ProfileForm::kConstant ? "constant" : "smooth-step";
}

ProfileForm profile_form_from_string(const std::string& s) {
  if (s == "constant") return ProfileForm::kConstant;
  if (s == "smooth-step" || s == "smooth_step" || s == "tanh")
    return ProfileForm::kSmoothStep;
  throw ConfigError("unknown profile form '" + s + "'");
}

VelocityProfile VelocityProfile::constant(double a) {
  return {a, a, 1.0, ProfileForm::kConstant};
}

VelocityProfile VelocityProfile::smooth_step(double a_minus, double a_plus, double tau) {
  return {a_minus, a_plus, tau, ProfileForm::kSmoothStep};
}

void VelocityProfile::validate() const {
  require(std::isfinite(a_minus) && std::isfinite(a_plus) && std::isfinite(tau),
          "velocity profile parameters must be finite");
  require(a_minus < 0.0 && a_plus < 0.0, "velocity profile requires A(x0) < 0");
  require(tau > 0.0, "velocity profile requires tau > 0");
  if (form == ProfileForm::kConstant)
    require(a_plus == a_minus, "constant profile requires a_plus == a_minus");
}

double VelocityProfile::operator()(double x0) const {
  if (form == ProfileForm::kConstant) return a_minus;
  return 0.5 * (a_plus + a_minus) + 0.5 * (a_plus - a_minus) * std::tanh(x0 / tau);
}

double VelocityProfile::max_abs() const {
  return std::max(std::abs(a_minus), std::abs(limit_plus()));
}

void FlowConfig::validate() const {
  profile.validate();
  require(ode_tol > 0.0 && ode_tol < 1e-3, "ode_tol must lie in (0, 1e-3)");
  require(rho_min > 0.0, "rho_min must be positive");
}

double HorizonCurve::at(double x) const {
  require(!x0.empty() && x >= x0.front() && x <= x0.back(),
          "horizon curve queried outside its sampled range");
  const auto it = std::upper_bound(x0.begin(), x0.end(), x);
  if (it == x0.end()) return rho.back();
  const auto i = static_cast<std::size_t>(it - x0.begin());
  const double w = (x - x0[i - 1]) / (x0[i] - x0[i - 1]);
  return (1.0 - w) * rho[i - 1] + w * rho[i];
}

double characteristic_rhs(double rho, double x0, const VelocityProfile& profile) {
  if (!(rho > 0.0)) throw DomainError("characteristic_rhs requires rho > 0");
  return profile(x0) / rho + 1.0;
}

namespace {

ode::Tolerance tolerance_of(const FlowConfig& flow) {
  return {flow.ode_tol, flow.ode_tol, 2000000};
}

// NaN below rho_min/2 makes the integrator shrink the step instead of
// evaluating the singular A/rho term.
ode::Rhs<1> scalar_rhs(const FlowConfig& flow) {
  const double floor = 0.5 * flow.rho_min;
  return [&flow, floor](double t, const ode::State<1>& y) -> ode::State<1> {
    if (!(y[0] > floor)) return {std::nan("")};
    return {flow.profile(t) / y[0] + 1.0};
  };
}

}  // namespace

CharacteristicPath integrate_characteristic(double sigma0, double x0_from,
                                            double x0_to, const FlowConfig& flow) {
  require(sigma0 > flow.rho_min, "integrate_characteristic requires sigma0 > rho_min");
  std::vector<ode::Sample<1>> samples;
  const double rho_min = flow.rho_min;
  const auto res = ode::integrate<1>(
      scalar_rhs(flow), x0_from, {sigma0}, x0_to, tolerance_of(flow),
      [rho_min](double, const ode::State<1>& y) { return y[0] < rho_min; }, &samples);
  CharacteristicPath path;
  path.x0.reserve(samples.size());
  path.rho.reserve(samples.size());
  for (const auto& s : samples) {
    path.x0.push_back(s.t);
    path.rho.push_back(s.y[0]);
  }
  path.captured = res.reason == ode::StopReason::kPredicate;
  return path;
}

double rho_of(double sigma, double x0, const FlowConfig& flow) {
  const double rho_min = flow.rho_min;
  const auto res = ode::integrate<1>(
      scalar_rhs(flow), 0.0, {sigma}, x0, tolerance_of(flow),
      [rho_min](double, const ode::State<1>& y) { return y[0] < rho_min; });
  if (res.reason == ode::StopReason::kPredicate) {
    std::ostringstream os;
    os << "characteristic sigma=" << sigma << " captured before x0=" << x0;
    throw CaptureError(os.str());
  }
  return res.y[0];
}

Fate classify(double sigma0, const FlowConfig& flow) {
  if (sigma0 <= flow.rho_min) return Fate::kCapture;
  const double target = std::abs(flow.profile.limit_plus());
  const double escape = 2.0 * target;
  const double rho_min = flow.rho_min;
  const double window = 20.0 * flow.profile.tau;
  auto stop = [=](double, const ode::State<1>& y) {
    return y[0] < rho_min || y[0] > escape;
  };
  double t = 0.0;
  ode::State<1> y{sigma0};
  constexpr int kWindows = 10;
  for (int w = 0; w < kWindows; ++w) {
    const auto res =
        ode::integrate<1>(scalar_rhs(flow), t, y, t + window, tolerance_of(flow), stop);
    if (res.reason == ode::StopReason::kPredicate)
      return res.y[0] < rho_min ? Fate::kCapture : Fate::kEscape;
    t = res.t;
    y = res.y;
  }
  return y[0] >= target ? Fate::kEscape : Fate::kCapture;
}

Separatrix find_separatrix(const FlowConfig& flow, const SeparatrixOptions& opt) {
  flow.validate();
  require(opt.x0_horizon_max > 0.0 && opt.x0_step > 0.0 && opt.tol > 0.0,
          "separatrix options must be positive");
  const double min_abs = std::min(std::abs(flow.profile.a_minus),
                                  std::abs(flow.profile.limit_plus()));
  double lo = opt.sigma_lo > 0.0 ? opt.sigma_lo
                                 : std::max(0.05 * min_abs, 2.0 * flow.rho_min);
  double hi = opt.sigma_hi > 0.0 ? opt.sigma_hi : 2.0 * flow.profile.max_abs() + 1.0;
  const Fate f_lo = classify(lo, flow);
  const Fate f_hi = classify(hi, flow);
  if (f_lo == f_hi) {
    std::ostringstream os;
    os << "separatrix bracket [" << lo << ", " << hi
       << "] does not straddle the horizon (both "
       << (f_lo == Fate::kEscape ? "escape" : "are captured") << ")";
    throw BracketError(os.str());
  }
  if (f_lo == Fate::kEscape) std::swap(lo, hi);

  Separatrix out;
  while (std::abs(hi - lo) >= opt.tol) {
    const double mid = 0.5 * (lo + hi);
    if (mid == lo || mid == hi) break;
    (classify(mid, flow) == Fate::kEscape ? hi : lo) = mid;
    ++out.bisection_steps;
  }
  out.sigma_star = 0.5 * (lo + hi);

  const auto n_half = static_cast<std::size_t>(std::llround(opt.x0_horizon_max / opt.x0_step));
  const double step = opt.x0_horizon_max / static_cast<double>(n_half);
  const std::size_t n = 2 * n_half + 1;
  out.horizon.x0.resize(n);
  out.horizon.rho.resize(n);
  out.horizon.x0[n_half] = 0.0;
  out.horizon.rho[n_half] = out.sigma_star;

  const auto tol = tolerance_of(flow);
  for (int dir : {-1, 1}) {
    ode::State<1> y{out.sigma_star};
    double t = 0.0;
    for (std::size_t k = 1; k <= n_half; ++k) {
      const double t_next = dir * static_cast<double>(k) * step;
      const auto res = ode::integrate<1>(scalar_rhs(flow), t, y, t_next, tol);
      t = t_next;
      y = res.y;
      const std::size_t idx = dir < 0 ? n_half - k : n_half + k;
      out.horizon.x0[idx] = t_next;
      out.horizon.rho[idx] = y[0];
    }
  }
  out.limit_error_minus =
      std::abs(out.horizon.rho.front() - std::abs(flow.profile.limit_minus()));
  out.limit_error_plus =
      std::abs(out.horizon.rho.back() - std::abs(flow.profile.limit_plus()));
  return out;
}

FlowMap make_flow_map(const FlowConfig& flow, const SeparatrixOptions& opt) {
  auto sep = find_separatrix(flow, opt);
  return FlowMap{flow, sep.sigma_star, std::move(sep.horizon)};
}

SigmaValue sigma_of(double rho, double x0, const FlowConfig& flow) {
  if (!(rho > 0.0)) throw DomainError("sigma_of requires rho > 0");
  if (x0 == 0.0) return {rho, 1.0, -(flow.profile(0.0) / rho + 1.0)};
  if (rho < flow.rho_min) throw CaptureError("sigma_of: rho below rho_min");

  // State (rho, J) with J = d rho(x0') / d rho(x0) along the characteristic.
  const double floor = 0.5 * flow.rho_min;
  const auto& profile = flow.profile;
  const ode::Rhs<2> rhs = [&profile, floor](double t, const ode::State<2>& y) -> ode::State<2> {
    if (!(y[0] > floor)) return {std::nan(""), std::nan("")};
    const double a = profile(t);
    return {a / y[0] + 1.0, -a / (y[0] * y[0]) * y[1]};
  };
  const double rho_min = flow.rho_min;
  const auto res = ode::integrate<2>(
      rhs, x0, {rho, 1.0}, 0.0, tolerance_of(flow),
      [rho_min](double, const ode::State<2>& y) { return y[0] < rho_min; });
  if (res.reason == ode::StopReason::kPredicate) {
    std::ostringstream os;
    os << "sigma_of: characteristic through (rho=" << rho << ", x0=" << x0
       << ") leaves the domain before x0=0";
    throw CaptureError(os.str());
  }
  const double sigma = res.y[0];
  const double ds = res.y[1];
  return {sigma, ds, -(profile(x0) / rho + 1.0) * ds};
}

}  // namespace sonic
