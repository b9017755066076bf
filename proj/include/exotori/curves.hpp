#pragma once

// Closed plane curves stored as truncated Fourier series
//   c(s) = sum_{k=-K}^{K} c_k e^{iks},  s in [0, 2 pi],
// which makes closure exact and gives derivatives in closed form.

#include <complex>
#include <functional>
#include <span>
#include <vector>

#include "exotori/jet.hpp"
#include "exotori/numkernel.hpp"

namespace exotori {

using Complex = std::complex<double>;

class PlaneCurve {
 public:
  PlaneCurve() = default;

  /// Coefficients c_{-K..K}; size must be odd.
  static PlaneCurve from_coefficients(std::vector<Complex> coeffs);
  /// Trigonometric interpolation of equispaced samples, truncated to |k| <= max_degree.
  static PlaneCurve from_samples(std::span<const Complex> samples, int max_degree);
  /// Samples f at n equispaced nodes. Throws ContractViolation when
  /// |f(0) - f(2 pi)| >= 1e-12 (open curve).
  static PlaneCurve from_function(const std::function<Complex(double)>& f, int n, int max_degree);
  static PlaneCurve circle(Complex center, double radius, double phase = 0.0);

  int degree() const { return static_cast<int>(coeffs_.size() / 2); }
  Complex coefficient(int k) const;
  const std::vector<Complex>& coefficients() const { return coeffs_; }

  Complex operator()(double s) const;
  Complex derivative(double s, int order = 1) const;
  Cplx eval(const Real& s) const;
  std::vector<Complex> samples(int n) const;

  /// w -> mul * w + add applied to the whole curve.
  PlaneCurve transformed(Complex mul, Complex add) const;
  /// Scaling by factor about a fixed point.
  PlaneCurve scaled(double factor, Complex about) const;
  /// +1 counterclockwise, -1 clockwise, 0 degenerate.
  int orientation() const;

 private:
  std::vector<Complex> coeffs_;  // index k + K
};

/// Normalized enclosed area (1/2pi) * integral of (x dy - y dx), signed by
/// orientation, by periodic quadrature with n nodes (0 = automatic).
double enclosed_area(const PlaneCurve& c, int n = 0);

/// Segment intersection test on n samples.
bool is_embedded(const PlaneCurve& c, int n = 512);

/// The same curve reparametrized by arclength starting at its point of
/// maximal real part, interpolated on n samples. A positive turning_weight
/// adds that multiple of the (length-normalized) turning angle, which keeps
/// samples in tight bends of very uneven curves (combined in quadrature).
PlaneCurve arclength_aligned(const PlaneCurve& c, int n, double turning_weight = 0.0);
struct Alignment {
  int samples = 0;
  double turning_weight = 0.0;
};
/// Smallest n = n_min * 2^k (capped at n_max) whose aligned interpolant agrees
/// with the doubled one to tol at the midpoints between samples; plain
/// arclength is tried before the turning-weighted parameter at each n.
Alignment aligned_resolution(const PlaneCurve& c, int n_min, double tol = 1e-10, int n_max = 4096);

enum class GammaMode { CP2, S2xS2 };
inline double gamma_target_area(GammaMode m) { return m == GammaMode::CP2 ? 1.0 / 3.0 : 0.25; }

inline constexpr double kGammaMargin = 0.02;

/// Smooth embedded curve of the given enclosed area inside the half-disc
/// {Re z > 0, |z| < 1}, keeping distance kGammaMargin from both edges.
/// Throws ConstructionError when the area is not reachable.
PlaneCurve make_gamma(double target_area);
inline PlaneCurve make_gamma(GammaMode m) { return make_gamma(gamma_target_area(m)); }

/// (x, y) -> e^x + i e^{-x} y. Pulls p dq back to y dx.
Cplx exact_symplecto_f(const Real& x, const Real& y);
Complex exact_symplecto_f(double x, double y);

/// f applied to the centered circle of normalized area a (Euclidean radius sqrt(a)).
PlaneCurve f_of_circle(double area, int n = 256);

struct IsotopyConstraints {
  bool avoid_origin = false;
  bool inside_half_disc = false;  // Re z > 0 and |z| < 1 at every sample
  int curve_samples = 256;        // minimal alignment resolution, doubled until converged
  int check_times = 33;
  int check_samples = 512;
};

struct CurveIsotopyStats {
  double min_modulus = 0.0;      // min over sampled (t, s) of |c_t(s)|
  double min_real = 0.0;
  double max_modulus = 0.0;
  double max_area_drift = 0.0;
  bool embedded = true;
};

/// Area-preserving isotopy between two closed curves of equal area:
/// linear interpolation of aligned (arclength + turning) parametrizations, rescaled at
/// each time about the mean point so the enclosed area stays constant.
class CurveIsotopy {
 public:
  CurveIsotopy(PlaneCurve start, PlaneCurve end, double area);

  /// Value with derivatives along the s and t seeds.
  Cplx eval(const Real& s, const Real& t) const;
  PlaneCurve at(double t) const;
  const PlaneCurve& start() const { return start_; }
  const PlaneCurve& end() const { return end_; }
  double area() const { return area_; }

  const CurveIsotopyStats& stats() const { return stats_; }
  void set_stats(const CurveIsotopyStats& s) { stats_ = s; }

 private:
  Real scale(const Real& t) const;

  PlaneCurve start_, end_;
  std::vector<Complex> delta_;  // end - start, same layout
  double area_ = 0.0;
  std::array<double, 3> area_poly_{};  // A(t) = a0 + a1 t + a2 t^2 before rescaling
  CurveIsotopyStats stats_;
};

/// Throws PreconditionError on an area mismatch above 1e-9 or when a curve
/// encloses the origin with avoid_origin set; ConstructionError when a
/// constraint is violated along the path.
CurveIsotopy curve_isotopy(const PlaneCurve& c0, const PlaneCurve& c1, const IsotopyConstraints& opts);

}  // namespace exotori
