#include <boost/math/tools/roots.hpp>
#include <chrono>
#include <cmath>

#include "doctest.h"
#include "sonic/error.hpp"
#include "sonic/profile_flow.hpp"
#include "test_util.hpp"

using namespace sonic;

namespace {

FlowConfig constant_flow(double a) {
  FlowConfig f;
  f.profile = VelocityProfile::constant(a);
  return f;
}

// rho + c ln|rho - c| - x0 is conserved along characteristics when A = -c.
double first_integral(double rho, double x0, double c) {
  return rho + c * std::log(std::abs(rho - c)) - x0;
}

// Label of the characteristic through (rho, x0) for A = -c outside the horizon,
// found by bracketing the first integral directly.
double constant_sigma_root(double rho, double x0, double c) {
  const double target = first_integral(rho, x0, c);
  auto g = [&](double s) { return first_integral(s, 0.0, c) - target; };
  boost::math::tools::eps_tolerance<double> tol(50);
  std::uintmax_t iters = 200;
  const auto [lo, hi] = boost::math::tools::toms748_solve(g, c + 1e-14, rho + 10.0, tol, iters);
  return 0.5 * (lo + hi);
}

}  // namespace

TEST_CASE("profile: forms, limits and validation") {
  const auto step = VelocityProfile::smooth_step(-1.2, -0.8, 1.0);
  CHECK(step(0.0) == doctest::Approx(-1.0));
  CHECK(step(-40.0) == doctest::Approx(-1.2));
  CHECK(step(40.0) == doctest::Approx(-0.8));
  CHECK(step.max_abs() == doctest::Approx(1.2));
  CHECK(VelocityProfile::constant(-0.7)(3.0) == -0.7);
  CHECK_THROWS_AS(VelocityProfile::smooth_step(-1.0, 0.2, 1.0).validate(), DomainError);
  CHECK_THROWS_AS(VelocityProfile::smooth_step(-1.0, -0.5, 0.0).validate(), DomainError);
  CHECK_THROWS_AS(characteristic_rhs(0.0, 0.0, step), DomainError);
  CHECK(profile_form_from_string("constant") == ProfileForm::kConstant);
  CHECK_THROWS_AS(profile_form_from_string("sawtooth"), ConfigError);
}

TEST_CASE("characteristics: constant horizon is a fixed point") {
  const auto flow = constant_flow(-1.0);
  const auto path = integrate_characteristic(1.0, 0.0, 5.0, flow);
  CHECK_FALSE(path.captured);
  for (double r : path.rho) CHECK(r == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("characteristics: outgoing ray conserves the first integral") {
  const auto flow = constant_flow(-1.0);
  const auto path = integrate_characteristic(2.0, 0.0, 3.0, flow);
  REQUIRE_FALSE(path.captured);
  REQUIRE(path.rho.size() > 3);
  const double c0 = first_integral(2.0, 0.0, 1.0);
  for (std::size_t i = 0; i < path.rho.size(); ++i)
    CHECK(std::abs(first_integral(path.rho[i], path.x0[i], 1.0) - c0) < 1e-9);
  CHECK(path.rho.back() > 2.0);
}

TEST_CASE("characteristics: ray inside the horizon is captured") {
  const auto flow = constant_flow(-1.0);
  const auto path = integrate_characteristic(0.5, 0.0, 10.0, flow);
  CHECK(path.captured);
  CHECK(path.x0.back() < 10.0);
  CHECK(classify(0.5, flow) == Fate::kCapture);
  CHECK(classify(1.5, flow) == Fate::kEscape);
  CHECK_THROWS_AS(rho_of(0.5, 10.0, flow), CaptureError);
}

TEST_CASE("separatrix: constant profiles sit at |A|") {
  for (double c : {1.0, 0.8}) {
    const auto sep = find_separatrix(constant_flow(-c));
    CHECK(std::abs(sep.sigma_star - c) < 1e-9);
    // Off-horizon rays separate like e^{|x0|/c}, so the endpoints carry the
    // bisection error amplified over x0 in [-10, 10].
    CHECK(sep.limit_error_minus < 1e-6);
    CHECK(sep.limit_error_plus < 1e-6);
  }
}

TEST_CASE("separatrix: smooth step horizon interpolates the asymptotic radii") {
  FlowConfig flow;
  const auto t0 = std::chrono::steady_clock::now();
  const auto sep = find_separatrix(flow);
  const double secs =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  CHECK(sep.sigma_star > 0.8);
  CHECK(sep.sigma_star < 1.2);
  CHECK(sep.limit_error_minus < 1e-3);
  CHECK(sep.limit_error_plus < 1e-3);
  CHECK(secs < 1.0);
  // The horizon curve is itself a characteristic.
  const auto path = integrate_characteristic(sep.sigma_star, 0.0, 4.0, flow);
  CHECK(std::abs(path.rho.back() - sep.horizon.at(4.0)) < 1e-8);
  CHECK(sep.horizon.at(0.0) == sep.sigma_star);
}

TEST_CASE("separatrix: neighbours on either side split") {
  FlowConfig flow;
  const double s = find_separatrix(flow).sigma_star;
  CHECK(classify(s + 1e-6, flow) == Fate::kEscape);
  CHECK(classify(s - 1e-6, flow) == Fate::kCapture);
}

TEST_CASE("separatrix: bracket that does not straddle is rejected") {
  SeparatrixOptions opt;
  opt.sigma_lo = 1.5;
  opt.sigma_hi = 3.0;
  CHECK_THROWS_AS(find_separatrix(constant_flow(-1.0), opt), BracketError);
}

TEST_CASE("sigma_of: identity at the initial slice") {
  FlowConfig flow;
  for (double r : {0.3, 1.0, 2.7}) {
    const auto sv = sigma_of(r, 0.0, flow);
    CHECK(sv.sigma == r);
    CHECK(sv.dsigma_drho == 1.0);
    CHECK(sv.dsigma_dx0 == doctest::Approx(-(flow.profile(0.0) / r + 1.0)));
  }
  CHECK_THROWS_AS(sigma_of(-1.0, 0.5, flow), DomainError);
}

TEST_CASE("sigma_of: matches the root of the first integral for A = -1") {
  const auto flow = constant_flow(-1.0);
  for (double r : {1.2, 1.7, 2.5, 3.4}) {
    for (double x0 : {0.1, 0.5, 1.0}) {
      const double ref = constant_sigma_root(r, x0, 1.0);
      CHECK(testutil::rel_err(sigma_of(r, x0, flow).sigma, ref) < 1e-9);
    }
  }
}

TEST_CASE("sigma_of: labels are transported and invert rho_of") {
  FlowConfig flow;
  const double h = 1e-5;
  for (double r : {1.1, 1.6, 2.4}) {
    for (double x0 : {0.3, 0.9}) {
      const auto sv = sigma_of(r, x0, flow);
      CHECK(sv.dsigma_drho > 0.0);
      const double transport = sv.dsigma_dx0 + characteristic_rhs(r, x0, flow.profile) * sv.dsigma_drho;
      CHECK(std::abs(transport) < 1e-12);
      const double fd_rho = (sigma_of(r + h, x0, flow).sigma - sigma_of(r - h, x0, flow).sigma) / (2 * h);
      const double fd_x0 = (sigma_of(r, x0 + h, flow).sigma - sigma_of(r, x0 - h, flow).sigma) / (2 * h);
      CHECK(std::abs(fd_rho - sv.dsigma_drho) < 1e-6);
      CHECK(std::abs(fd_x0 - sv.dsigma_dx0) < 1e-6);
      CHECK(std::abs(rho_of(sv.sigma, x0, flow) - r) < 1e-9);
    }
  }
}

TEST_CASE("characteristics: flow map composes") {
  FlowConfig flow;
  const double sigma0 = 1.4;
  const auto first = integrate_characteristic(sigma0, 0.0, 0.7, flow);
  const auto second = integrate_characteristic(first.rho.back(), 0.7, 1.6, flow);
  CHECK(std::abs(second.rho.back() - rho_of(sigma0, 1.6, flow)) < 1e-9);
}
