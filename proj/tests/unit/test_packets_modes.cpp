#include <boost/math/special_functions/gamma.hpp>
#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sonic/error.hpp"
#include "sonic/packets_modes.hpp"
#include "sonic/profile_flow.hpp"
#include "sonic/quadrature.hpp"
#include "test_util.hpp"

using namespace sonic;
using testutil::rel_err;
constexpr double kPi = std::numbers::pi;

namespace {

PacketParams packet(double alpha, double eps, double a, double sigma_star = 1.0) {
  PacketParams p;
  p.alpha = alpha;
  p.eps = eps;
  p.a = a;
  p.sigma_star = sigma_star;
  return p;
}

}  // namespace

TEST_CASE("packet profile: support, peak and envelope") {
  const auto p = packet(1.0, 0.25, 8.0, 0.9);
  CHECK(eval_packet_profile(0.9, p) == Complex(0.0));
  CHECK(eval_packet_profile(0.5, p) == Complex(0.0));
  CHECK(std::abs(eval_packet_profile(0.9 + 1.0 / 8.0, p)) ==
        doctest::Approx(std::pow(1.0 / 8.0, 0.25) * std::exp(-1.0)));
  // |C01| = s^eps e^{-a s} peaks at s = eps / a.
  const double peak = p.eps / p.a;
  const double at_peak = std::abs(packet_profile_offset(peak, p));
  for (double f : {0.5, 0.9, 1.1, 2.0}) CHECK(std::abs(packet_profile_offset(f * peak, p)) < at_peak);
  const auto samples = sample_packet_profile(p, 1.0, 11);
  REQUIRE(samples.size() == 11);
  CHECK(samples.front().sigma == 0.9);
  CHECK(samples.back().sigma == doctest::Approx(1.9));
  CHECK(samples[3].value == eval_packet_profile(samples[3].sigma, p));
  CHECK_THROWS_AS(sample_packet_profile(p, 1.0, 1), DomainError);
}

TEST_CASE("packet profile: logarithmic phase winding") {
  const auto p = packet(1.5, 0.25, 4.0);
  for (double s : {1e-6, 1e-3, 0.2}) {
    const Complex ratio = packet_profile_offset(2.0 * s, p) / packet_profile_offset(s, p);
    CHECK(std::abs(std::arg(ratio) - std::remainder(p.alpha * std::log(2.0), 2 * kPi)) < 1e-12);
  }
  // One full turn of phase between s and s e^{2 pi / alpha}.
  const double s = 1e-4;
  const Complex turn = packet_profile_offset(s * std::exp(2 * kPi / p.alpha), p) / packet_profile_offset(s, p);
  CHECK(std::abs(std::arg(turn)) < 1e-10);
}

TEST_CASE("packet profile: derivative matches finite differences") {
  const auto p = packet(1.0, 0.5, 3.0);
  const double h = 1e-6;
  for (double s : {0.05, 0.3, 1.0}) {
    const Complex fd = (packet_profile_offset(s + h, p) - packet_profile_offset(s - h, p)) / (2 * h);
    CHECK(rel_err(packet_profile_derivative(s, p), fd) < 1e-7);
  }
}

TEST_CASE("packet profile: mass beyond the tail cut is negligible") {
  for (double eps : {0.1, 0.25, 0.5}) {
    const auto p = packet(1.0, eps, 8.0);
    const double cut = 10.0 * (eps + 1.0) / p.a;
    auto mass = [&](double lo, double hi) {
      return quad::finite(quad::RealFn([&](double s) { return std::norm(packet_profile_offset(s, p)); }),
                          lo, hi, 1e-13)
          .value;
    };
    const double total = mass(0.0, 60.0 / p.a);
    const double tail = mass(cut, 60.0 / p.a);
    CHECK(tail / total < 1e-6);
    CHECK(rel_err(tail / total, boost::math::gamma_q(2 * eps + 1, 2 * p.a * cut)) < 1e-6);
  }
}

TEST_CASE("packet field: vanishes inside the horizon label and scales as rho^{-1/2}") {
  FlowConfig flow;
  const double sigma_star = find_separatrix(flow).sigma_star;
  const auto p = packet(1.0, 0.25, 8.0, sigma_star);
  CHECK(eval_packet(0.7 * sigma_star, 0.0, p, flow) == Complex(0.0));
  for (double x0 : {0.2, 0.6}) {
    const double inside = rho_of(sigma_star - 0.01, x0, flow);
    CHECK(eval_packet(inside, x0, p, flow) == Complex(0.0));
    const double rho = rho_of(sigma_star + 0.05, x0, flow);
    const Complex f = eval_packet(rho, x0, p, flow);
    CHECK(rel_err(f * std::sqrt(rho), packet_profile_offset(0.05, p)) < 1e-8);
  }
}

TEST_CASE("packet field: jet agrees with finite differences") {
  FlowConfig flow;
  const auto p = packet(1.0, 0.25, 4.0, find_separatrix(flow).sigma_star);
  const double h = 1e-6;
  const double rho = p.sigma_star + 0.4;
  const double x0 = 0.3;
  const FieldJet j = eval_packet_jet(rho, x0, p, flow);
  CHECK(rel_err(j.value, eval_packet(rho, x0, p, flow)) < 1e-14);
  const Complex d_rho = (eval_packet(rho + h, x0, p, flow) - eval_packet(rho - h, x0, p, flow)) / (2 * h);
  const Complex d_x0 = (eval_packet(rho, x0 + h, p, flow) - eval_packet(rho, x0 - h, p, flow)) / (2 * h);
  CHECK(rel_err(j.d_rho, d_rho) < 1e-6);
  CHECK(rel_err(j.d_x0, d_x0) < 1e-6);
}

TEST_CASE("modes: frequencies and initial data") {
  CHECK(mode_lambda(+1, 0.0, -1.0) == 1.0);
  CHECK(mode_lambda(-1, 0.0, -1.0) == -1.0);
  CHECK(mode_lambda(+1, 1.0, -1.0) == doctest::Approx(1.0 + std::sqrt(2.0)));
  CHECK(mode_lambda(-1, 1.0, -1.0) == doctest::Approx(1.0 - std::sqrt(2.0)));
  CHECK(mode_gamma(2.0, 0.0) == doctest::Approx(0.5));
  CHECK_THROWS_AS(mode_gamma(0.0, 1.0), DomainError);

  const ModeData d = mode_initial_data({1.0}, ModeFamily::kPlus, 1.5, -1.0 / 1.5);
  CHECK(std::abs(d.value) == doctest::Approx(mode_gamma(1.5, 1.0)));
  CHECK(std::arg(d.value) == doctest::Approx(1.5));
  CHECK(rel_err(d.dvalue_dx0, Complex(0.0, mode_lambda(-1, 1.0, -1.0 / 1.5)) * d.value) < 1e-15);
}

TEST_CASE("modes: plus family at eta conjugates to minus family at -eta") {
  for (double eta : {-3.0, -0.5, 0.7, 4.0})
    for (double rho : {0.6, 1.3}) {
      const double ar = -1.1 / rho;
      const ModeData plus = mode_initial_data({eta}, ModeFamily::kPlus, rho, ar);
      const ModeData minus = mode_initial_data({-eta}, ModeFamily::kMinus, rho, ar);
      CHECK(std::abs(std::conj(plus.value) - minus.value) < 1e-15);
      CHECK(std::abs(std::conj(plus.dvalue_dx0) - minus.dvalue_dx0) < 1e-14);
    }
}

TEST_CASE("eikonal: initial slice, transport and time derivative") {
  FlowConfig flow;
  const double eta = -3.0;
  for (double rho : {0.7, 1.4, 2.2}) {
    const Complex e0 = eval_eikonal(rho, 0.0, eta, flow);
    CHECK(std::abs(e0 - mode_gamma(rho, eta) * std::exp(Complex(0.0, -eta * rho))) < 1e-15);
  }
  // The phase is constant along characteristics.
  for (double sigma : {1.1, 1.8})
    for (double x0 : {0.25, 0.8}) {
      const double rho = rho_of(sigma, x0, flow);
      const Complex e = eval_eikonal(rho, x0, eta, flow) / mode_gamma(rho, eta);
      CHECK(std::abs(e - std::exp(Complex(0.0, -eta * sigma))) < 1e-9);
    }
  const double h = 1e-6;
  for (double x0 : {0.0, 0.5}) {
    const double rho = 1.6;
    const FieldJet j = eval_eikonal_jet(rho, x0, eta, flow);
    const Complex fd_t = (eval_eikonal(rho, x0 + h, eta, flow) - eval_eikonal(rho, x0 - h, eta, flow)) / (2 * h);
    const Complex fd_r = (eval_eikonal(rho + h, x0, eta, flow) - eval_eikonal(rho - h, x0, eta, flow)) / (2 * h);
    CHECK(rel_err(j.d_x0, fd_t) < 1e-6);
    CHECK(rel_err(j.d_rho, fd_r) < 1e-6);
  }
  CHECK_THROWS_AS(eval_eikonal(1.0, 0.0, 0.5, flow), DomainError);
}

TEST_CASE("norm: closed form values") {
  FlowConfig flow;
  CHECK(packet_norm(packet(1.0, 0.5, 1.0), flow, false) == doctest::Approx(2 * kPi));
  CHECK(packet_norm(packet(0.1, 0.5, 1.0), flow, false) == doctest::Approx(0.2 * kPi));
  // Scaling: a^{-2 eps} and amplitude^2.
  auto p = packet(1.0, 0.25, 4.0);
  const double base = packet_norm(p, flow, false);
  p.a = 16.0;
  CHECK(rel_err(packet_norm(p, flow, false), base * std::pow(4.0, -0.5)) < 1e-14);
  p.amplitude = 3.0;
  CHECK(rel_err(packet_norm(p, flow, false), 9.0 * base * std::pow(4.0, -0.5)) < 1e-14);
}

TEST_CASE("norm: quadrature of the inner product matches the closed form") {
  FlowConfig flow;
  const auto p = packet(2.0, 0.25, 5.0, find_separatrix(flow).sigma_star);
  CHECK(rel_err(packet_norm(p, flow, true), packet_norm(p, flow, false)) < 1e-8);
  const auto rows = norm_table(packet(1.0, 0.5, 1.0, 1.0), {2.0, 8.0, 32.0}, flow);
  REQUIRE(rows.size() == 3);
  for (const auto& r : rows) CHECK(r.rel_err < 1e-8);
  CHECK(rows[0].norm_closed > rows[2].norm_closed);
}
