#pragma once

// Method-of-lines solver for the radial m = 0 wave equation
//   (d/dx0 + (A/rho) d/drho)^2 f - d^2 f/drho^2 = 0
// written as the first-order system f_t = g - c f_rho, g_t = f_rhorho - c g_rho
// with c = A(x0)/rho and g = (d/dx0 + c d/drho) f. Classical RK4 in time.

#include <string>
#include <vector>

#include <boost/math/interpolators/cardinal_quintic_b_spline.hpp>

#include "sonic/field.hpp"
#include "sonic/profile_flow.hpp"

namespace sonic {

enum class SchemeOrder { kSecond = 2, kFourth = 4 };

SchemeOrder scheme_order_from_int(int order);

struct RadialGrid {
  double rho_min = 0.4;
  double rho_max = 4.0;
  int n_rho = 4096;
  double dt = 0.0;  ///< 0 selects the largest step allowed by c_safe
  SchemeOrder order = SchemeOrder::kFourth;
  double c_safe = 0.4;
  double sponge_width = 0.6;
  double sponge_strength = 40.0;

  /// Throws ConfigError on inconsistent geometry.
  void validate() const;
  double spacing() const;
  double node(int i) const { return rho_min + spacing() * i; }
  std::vector<double> nodes() const;
  /// c_safe * spacing / (1 + max|A| / rho_min).
  double max_stable_dt(const VelocityProfile& profile) const;
  /// dt if set, else max_stable_dt. Throws ResolutionError if a user dt
  /// exceeds the stability bound.
  double time_step(const VelocityProfile& profile) const;
  /// Throws ResolutionError unless |eta| spacing <= 2 pi / 16.
  void require_resolves(double eta) const;
};

struct FieldState {
  double x0 = 0.0;
  std::vector<Complex> value;
  std::vector<Complex> dvalue_dx0;
};

struct SolverOptions {
  /// Per-step bound on the growth of the discrete L2 norm of (f, g).
  double max_growth_per_step = 1.05;
  /// Adds the first-order term f_rho / rho of the full radial Laplacian.
  /// Off by default: the reduced operator above is the one being studied.
  bool radial_term = false;
};

class WaveSolver {
 public:
  WaveSolver(const RadialGrid& grid, const VelocityProfile& profile,
             const FieldState& initial, SolverOptions options = {});

  /// One RK4 step of size dt(). Throws InstabilityError on runaway growth.
  void step();
  /// Steps until time() == t; the last step is shortened to land exactly.
  void advance_to(double t);

  double time() const { return t_; }
  double dt() const { return dt_; }
  long steps_taken() const { return steps_; }
  const RadialGrid& grid() const { return grid_; }

  FieldState state() const;
  /// Value, time derivative and radial derivative at every node.
  std::vector<FieldJet> jets() const;

 private:
  void rhs(double t, const std::vector<Complex>& f, const std::vector<Complex>& g,
           std::vector<Complex>& df, std::vector<Complex>& dg);
  void fill_ghosts(const std::vector<Complex>& u, std::vector<Complex>& ext) const;
  void centered_first(const std::vector<Complex>& ext, std::vector<Complex>& out) const;
  double norm() const;
  void take_step(double h);

  RadialGrid grid_;
  VelocityProfile profile_;
  SolverOptions options_;
  double h_rho_;
  double dt_;
  double t_ = 0.0;
  long steps_ = 0;
  std::vector<double> rho_;
  std::vector<double> inv_rho_;
  std::vector<double> sponge_;
  std::vector<Complex> f_, g_;
  // scratch
  std::vector<Complex> ef_, eg_;
  std::vector<Complex> k1f_, k1g_, k2f_, k2g_, k3f_, k3g_, k4f_, k4g_, tf_, tg_;
};

/// Advances `state` by one step of the solver's stable dt.
FieldState step_wave(const FieldState& state, const RadialGrid& grid,
                     const VelocityProfile& profile);

/// Smooth compactly supported cutoff: 1 on [lo, hi], 0 outside
/// [lo - taper, hi + taper], C-infinity in between.
struct DataWindow {
  double lo = 0.55;
  double hi = 3.25;
  double taper = 0.15;

  double operator()(double rho) const;
  static DataWindow for_grid(const RadialGrid& grid);
};

/// Grid samples of a field with quintic B-spline interpolation of each
/// component. The interpolant is C^4, so adaptive quadrature over it
/// converges without resolving a kink at every node.
class SampledField {
 public:
  SampledField(double rho0, double spacing, const std::vector<FieldJet>& jets);
  FieldJet at(double rho) const;
  double rho_lo() const { return rho0_; }
  double rho_hi() const { return rho_hi_; }

 private:
  using Spline = boost::math::interpolators::cardinal_quintic_b_spline<double>;
  double rho0_;
  double rho_hi_;
  std::vector<Spline> parts_;  // re/im of value, d_x0, d_rho
};

SampledField sample(const WaveSolver& solver);

/// Windowed outgoing-mode data at x0 = 0 for eta < 0: value gamma e^{-i eta rho}
/// and time derivative i (eta A(0)/rho - sqrt(eta^2+1)) times the value.
FieldState outgoing_mode_data(double eta, const RadialGrid& grid,
                              const VelocityProfile& profile, const DataWindow& window);

struct ModeHistory {
  double eta = 0.0;
  std::vector<FieldState> states;  ///< one per requested output time
  std::vector<SampledField> fields;
  long steps = 0;
  double dt = 0.0;
};

/// Evolves the windowed outgoing mode and records it at each output time
/// (sorted, nonnegative; the last one is the final time). Throws
/// ResolutionError if eta is not resolved by the grid.
ModeHistory solve_mode(double eta, const RadialGrid& grid, const VelocityProfile& profile,
                       const std::vector<double>& output_times,
                       const DataWindow& window, SolverOptions options = {});

}  // namespace sonic
