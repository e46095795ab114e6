#pragma once

// Exact-mode versus eikonal projections of the packet: the part of the
// created density carried by the remainder f0 - E, and supporting
// convergence studies of the wave solver.

#include <string>
#include <vector>

#include "sonic/kg_spectrum.hpp"
#include "sonic/wave_solver.hpp"

namespace sonic {

/// Packet projections of an arbitrary field f at time x0, oriented like
/// eikonal_projections so that the density is -4 Re(c1 conj(c2)):
///   c1 =  i int d_rho(conj(f) rho^{1/2}) C01 d rho
///   c2 =  i int [(conj(f_t) + (A/rho) conj(f_rho)) rho^{1/2}
///               + (A/2) rho^{-3/2} conj(f)] C01 d rho
/// over the packet support sigma in (sigma*, sigma* + span].
ProjectionPair field_projections(const FieldFn& f, double x0, const PacketParams& p,
                                 const FlowConfig& flow, double span, double tol = 1e-9);

struct RemainderConfig {
  FlowConfig flow;
  double alpha = 1.0;
  double eps = 0.25;
  std::vector<double> a_values{8.0, 16.0, 32.0};
  std::vector<double> eta_samples{-2.0, -6.0, -18.0};
  RadialGrid grid;
  double t_eval = 0.0;   ///< slice on which projections are compared
  double t_final = 0.5;  ///< evolution time for the field-level checks
  double eta_max_factor = 8.0;
  int eta_panels = 48;   ///< 8-point Gauss-Legendre panels over (0, eta_max_factor a)
  double tol = 1e-9;
  bool radial_term = false;  ///< evolve with the full radial Laplacian

  void validate() const;
};

struct SweepDeviation {
  double a;
  double total_exact;    ///< int over (0, eta_max_factor a) of the exact-mode density
  double total_eikonal;  ///< same with the eikonal density
  double total_full;     ///< eikonal total over (0, inf)
  double dev_rel;        ///< |total_exact - total_eikonal| / total_full
};

struct EtaDeviation {
  double a;
  double eta;
  double density_exact;
  double density_eikonal;
  double dev_rel;    ///< relative density deviation
  double c2_dev_rel; ///< |c2_exact - c2_eikonal| / |c2_eikonal|
};

struct FieldBound {
  double eta;
  double t;
  double max_abs_d;       ///< max |f0 - E| over the packet neighborhood
  double bound_constant;  ///< max_abs_d (1+|eta|) (1+eta^2)^{1/4}
};

struct EvolvedProjection {
  double a;
  double eta;
  double t;
  double c1_dev_rel;
  double c2_dev_rel;
};

struct RemainderReport {
  double sigma_star = 0.0;
  std::vector<SweepDeviation> sweep;
  PowerFit a_fit{};             ///< dev_rel ~ K a^{-p}
  std::vector<EtaDeviation> eta_rows;
  PowerFit eta_fit{};           ///< dev_rel ~ K (1+|eta|)^{-p} at the largest a
  std::vector<FieldBound> field_rows;
  PowerFit field_fit{};         ///< max_abs_d (1+eta^2)^{1/4} ~ K (1+|eta|)^{-p}
  std::vector<EvolvedProjection> evolved;
  double window_error = 0.0;    ///< packet mass fraction outside the window at t_eval
  double evolved_window_error = 0.0;  ///< same for the evolved slice at t_final
  double discretization_error = 0.0;
  std::vector<std::string> warnings;
};

RemainderReport remainder_contribution(const RemainderConfig& cfg);

struct ConvergenceStudy {
  std::vector<int> n_rho;
  std::vector<double> error_vs_exact;  ///< max error on the coarsest nodes
  double order_vs_exact = 0.0;         ///< log2 ratio of the two finest errors
  double self_order = 0.0;             ///< log2(|u1 - u2| / |u2 - u4|)
};

/// Right-moving Gaussian pulse under A = 0 on three nested grids
/// (n, 2n-1, 4n-3 nodes) to time t_final.
ConvergenceStudy dalembert_convergence(int n_base, SchemeOrder order, double t_final);

}  // namespace sonic
