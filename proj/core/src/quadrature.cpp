#include "sonic/quadrature.hpp"

#include <boost/math/quadrature/exp_sinh.hpp>
#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <boost/math/quadrature/tanh_sinh.hpp>
#include <cmath>
#include <limits>
#include <sstream>

#include "sonic/error.hpp"

namespace sonic::quad {

namespace bq = boost::math::quadrature;

namespace {

// Double-exponential rules report a conservative error from the last two
// refinement levels; accept up to 100x the requested tolerance before failing.
constexpr double kSlack = 100.0;

// One rule per thread: integrate() is non-const in this Boost version and
// the abscissa tables grow lazily.
bq::tanh_sinh<double>& tanh_sinh_rule() {
  thread_local bq::tanh_sinh<double> rule(15);
  return rule;
}

bq::exp_sinh<double>& exp_sinh_rule() {
  thread_local bq::exp_sinh<double> rule(15);
  return rule;
}

}  // namespace

void check(const char* what, double value_abs, double err, double tol, double floor) {
  if (!std::isfinite(err) || err > tol * std::max(value_abs, floor)) {
    std::ostringstream os;
    os << what << ": quadrature error estimate " << err << " exceeds tolerance "
       << tol << " (|value|=" << value_abs << ")";
    throw ToleranceError(os.str());
  }
}

ComplexEstimate finite(const ComplexFn& f, double a, double b, double tol) {
  double err = 0.0, l1 = 0.0;
  const Complex v = tanh_sinh_rule().integrate(f, a, b, tol, &err, &l1);
  check("tanh-sinh", std::max(std::abs(v), 1e-8 * l1), err, kSlack * tol);
  return {v, err};
}

Estimate finite(const RealFn& f, double a, double b, double tol) {
  double err = 0.0, l1 = 0.0;
  const double v = tanh_sinh_rule().integrate(f, a, b, tol, &err, &l1);
  check("tanh-sinh", std::max(std::abs(v), 1e-8 * l1), err, kSlack * tol);
  return {v, err};
}

ComplexEstimate semi_infinite(const ComplexFn& f, double a, double tol) {
  double err = 0.0, l1 = 0.0;
  const auto shifted = [&](double x) { return f(a + x); };
  const Complex v = exp_sinh_rule().integrate(shifted, 0.0, std::numeric_limits<double>::infinity(), tol, &err, &l1);
  check("exp-sinh", std::max(std::abs(v), 1e-8 * l1), err, kSlack * tol);
  return {v, err};
}

Estimate semi_infinite(const RealFn& f, double a, double tol) {
  double err = 0.0, l1 = 0.0;
  const auto shifted = [&](double x) { return f(a + x); };
  const double v = exp_sinh_rule().integrate(shifted, 0.0, std::numeric_limits<double>::infinity(), tol, &err, &l1);
  check("exp-sinh", std::max(std::abs(v), 1e-8 * l1), err, kSlack * tol);
  return {v, err};
}

ComplexEstimate kronrod(const ComplexFn& f, double a, double b, double tol,
                        unsigned max_depth) {
  double err = 0.0, l1 = 0.0;
  const Complex v =
      bq::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol, &err, &l1);
  check("gauss-kronrod", std::max(std::abs(v), 1e-8 * l1), err, kSlack * tol);
  return {v, err};
}

Estimate kronrod(const RealFn& f, double a, double b, double tol, unsigned max_depth) {
  double err = 0.0, l1 = 0.0;
  const double v =
      bq::gauss_kronrod<double, 61>::integrate(f, a, b, max_depth, tol, &err, &l1);
  check("gauss-kronrod", std::max(std::abs(v), 1e-8 * l1), err, kSlack * tol);
  return {v, err};
}

Complex singular_oscillatory(const ComplexFn& g, double length, double h0, double tol) {
  h0 = std::min(h0, length);
  const auto head = semi_infinite(
      [&](double u) {
        const double s = h0 * std::exp(-u);
        return s == 0.0 ? Complex{} : g(s) * s;
      },
      0.0, tol);
  if (h0 >= length) return head.value;
  return head.value + kronrod(g, h0, length, tol, 25).value;
}

}  // namespace sonic::quad
