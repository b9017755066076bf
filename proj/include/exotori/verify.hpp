#pragma once

// Residuals, integrals and set comparisons used to certify the isotopy
// chains: Lagrangian tests, Maslov indices, monotonicity fits, flux of
// Lagrangian isotopies, endpoint matching and CP2 fiber membership.

#include <functional>
#include <string>
#include <vector>

#include "exotori/tori.hpp"

namespace exotori {

/// max |omega(d_theta, d_s)| over an n x n grid.
double lagrangian_residual(const TorusChart& chart, int n);
/// min over the grid of the 2-plane volume |d_theta ^ d_s| in flat coordinates.
double immersion_margin(const TorusChart& chart, int n);
/// Largest mismatch between chart values at theta = 0 / 2pi and s = 0 / 2pi.
double seam_mismatch(const TorusChart& chart, int n);

/// Adds eps * sin(s) to the real part of the first coordinate (C2 only).
TorusChart perturbed(const TorusChart& chart, double eps);

enum class Generator { Theta, S };
std::string_view to_string(Generator g);

/// Winding of det(d_theta, d_s)^2 along the generator loop through `at`
/// (the fixed value of the other coordinate), chart in C2.
/// EvaluationError "frame degenerate" when the determinant nearly vanishes.
int maslov_index(const TorusChart& chart, Generator loop, double at, int n);

/// A disc with boundary on a torus: map (lambda, s) in [0,1] x [0,2pi],
/// boundary at lambda = 1 traced along the generator loop of `torus`.
struct DiscClass {
  std::string label;
  Space space = Space::C2;
  std::function<AmbientJet(const Real& lambda, const Real& s)> disc;
  TorusChart darboux;  // C2 chart of the torus for the Maslov index
  Generator loop = Generator::Theta;
  double at = 0.0;
};

/// Area of a disc chart: Gauss-Legendre in lambda times trapezoid in s.
double disc_area(const std::function<AmbientJet(const Real&, const Real&)>& disc, int n_lambda, int n_s);

/// The cone m + lambda (c(s) - m) over a closed curve.
Cplx cone(const PlaneCurve& c, const Real& lambda, const Real& s);

struct MonotonicityEstimate {
  struct Entry {
    std::string label;
    double area = 0.0;
    int maslov = 0;
    bool stable = true;  // same integer on the doubled grid
  };
  std::vector<Entry> entries;
  double constant = 0.0;       // fitted K_L
  double max_deviation = 0.0;  // max |area / maslov - K_L|
};

/// Throws EvaluationError "non-monotone witness" for zero Maslov with
/// nonzero area; constant discs (both zero) are dropped.
MonotonicityEstimate monotonicity_fit(const std::vector<DiscClass>& discs, int n);

/// Time-dependent torus, seeds theta -> 0, s -> 1, t -> 2.
struct IsotopyPath {
  std::string label;
  Space space = Space::C2;
  std::function<AmbientJet(const Real& theta, const Real& s, const Real& t)> map;
  std::string provenance;

  TorusChart slice(double t) const;
};

/// Integral over the generator loop through `at` of omega(d_t, d_loop).
double flux(const IsotopyPath& path, Generator g, double t, int n, double at = 0.0);

struct PathSummary {
  double max_lagrangian = 0.0;
  double max_flux_theta = 0.0;
  double max_flux_s = 0.0;
  int times = 0;
};
/// Lagrangian residual on n x n grids and both fluxes (flux_nodes-point
/// loops, enough to resolve the curve degree) at `times` equispaced times.
PathSummary check_path(const IsotopyPath& path, int times, int n, int flux_nodes = 512);

/// Isotopies built from a curve isotopy c_t.
IsotopyPath ep_curve_path(const CurveIsotopy& iso, std::string label);
IsotopyPath fiber_curve_path(const CurveIsotopy& iso, std::string label);
IsotopyPath transported_curve_path(const CurveIsotopy& iso, std::string label);
/// M(t) applied to a fixed chart.
IsotopyPath matrix_path(const TorusChart& chart, std::function<Mat3J(const Real& t)> m, std::string label);

/// Symmetric Hausdorff distance between the n x n sample clouds, each
/// sample projected onto the other chart by Gauss-Newton. Fubini-Study
/// distance on CP2, chordal elsewhere.
double endpoint_match(const TorusChart& a, const TorusChart& b, int n);
/// max over the grid of the pointwise distance a(th, s) vs b(th + dtheta, s).
double pointwise_match(const TorusChart& a, const TorusChart& b, int n, double dtheta = 0.0);

struct FiberCheck {
  double max_line_residual = 0.0;
  double min_rp2_margin = 0.0;
  double min_area = 0.0, max_area = 0.0;  // NaN when the slices are not in N_theta
  bool in_fibers = false;
};
/// Slices theta_k = 2 pi k / n_theta against the lines N_theta; fiber areas
/// by quadrature of omega over the cone on the recovered fiber curve.
FiberCheck fiber_checks_cp2(const TorusChart& chart, int n_theta, int n_s);

}  // namespace exotori
