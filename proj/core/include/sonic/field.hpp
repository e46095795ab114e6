#pragma once

#include <complex>

namespace sonic {

using Complex = std::complex<double>;

/// Value of a field together with its first partial derivatives at a point.
struct FieldJet {
  Complex value{};
  Complex d_x0{};
  Complex d_rho{};
};

}  // namespace sonic
