#pragma once

// Torus and surface parametrizations, circle actions and conjugating
// matrices. Every chart evaluates with jets: seed 0 is theta, seed 1 is the
// second parameter (s or tau), seed 2 is reserved for isotopy time.

#include <functional>
#include <string>

#include "exotori/curves.hpp"
#include "exotori/spaces.hpp"

namespace exotori {

using Mat3 = std::array<std::array<Complex, 3>, 3>;
using Mat3J = std::array<std::array<Cplx, 3>, 3>;

Mat3 identity3();
Mat3 operator*(const Mat3& a, const Mat3& b);
Mat3 adjoint(const Mat3& a);
double distance(const Mat3& a, const Mat3& b);  // max-entry norm
Mat3 value(const Mat3J& m);

/// Applies a constant matrix: to z[0..2] on C2/CP2 (C2 uses the upper 2x2
/// block), to both sphere factors on S2xS2.
AmbientJet apply_matrix(const Mat3& m, const AmbientJet& p);
AmbientJet apply_matrix(const Mat3J& m, const AmbientJet& p);
AmbientPoint apply_matrix(const Mat3& m, const AmbientPoint& p);

/// The conjugating matrix ((i/sqrt2, -1/sqrt2), (1/sqrt2, -i/sqrt2)) in the upper block.
Mat3 matrix_P();
/// The scalar phase e^{-i pi/4} on the first two coordinates.
Mat3 matrix_R_minus_quarter();
/// Rotation diag(1, -1, -1) of R^3 (the half turn about the x axis).
Mat3 matrix_P2();
/// Rotation about the x axis by angle a.
Mat3 rotation_x(double a);

struct CircleActionSpec {
  std::string name;
  Space space = Space::C2;
  std::function<Mat3J(const Real& alpha)> matrix;
  std::function<Real(const AmbientJet& p)> hamiltonian;
};

/// diag(e^{i a}, e^{-i a}) with H = (|z0|^2 - |z1|^2) / 2pi.
CircleActionSpec rho_ep();
/// Real rotation by a in the (z0, z1) plane with H = Im(z0 conj z1) / pi.
CircleActionSpec rho_ch();
/// Simultaneous rotation about the vertical axis of both sphere factors
/// with H = -(x3 + y3) / 2pi.
CircleActionSpec rho_bc();

AmbientPoint act(const CircleActionSpec& spec, double alpha, const AmbientPoint& p);
AmbientJet act(const CircleActionSpec& spec, double alpha, const AmbientJet& p);

/// Max over sampled points and directions of |omega(X, v) + dH(v)|, where X
/// is the generator at alpha = 0 (convention iota_X omega = -dH).
double check_generates(const CircleActionSpec& spec, int samples, unsigned seed = 0);
/// Max over an n-point angle grid of |M(a)M(b) - M(a+b)| plus |M(0) - Id|.
double group_law_residual(const CircleActionSpec& spec, int n);

/// Max over an n-point theta grid of |P^* diag(e^{it}, e^{-it}) P - rotation(t)|
/// together with the unitarity and determinant defects of P.
double conjugation_identity_check(int n = 256);

struct TorusChart {
  std::string label;
  Space space = Space::C2;
  std::function<AmbientJet(const Real& theta, const Real& s)> map;

  /// Evaluation with seeds theta -> 0, s -> 1.
  AmbientJet operator()(double theta, double s) const;
};

struct SurfaceChart {
  std::string label;
  Space space = Space::C2;
  double tau_min = -1.0, tau_max = 1.0;  // open range
  std::function<AmbientJet(const Real& theta, const Real& tau)> map;

  AmbientJet operator()(double theta, double tau) const;
};

/// m applied to every point of the chart.
TorusChart transformed(const TorusChart& c, const Mat3& m, std::string label);

/// (tau, theta, y, x) -> ((e^x + i e^{-x} y) cos th - i tau e^{-x} sin th,
///                        (e^x + i e^{-x} y) sin th + i tau e^{-x} cos th).
std::array<Cplx, 2> chekanov_map_I(const Real& tau, const Real& theta, const Real& y, const Real& x);
std::array<Complex, 2> chekanov_map_I(double tau, double theta, double y, double x);

/// Chekanov torus over the centered circle of normalized area 2 r2.
TorusChart theta_ch(double r2);
/// (c(s) e^{i theta}, c(s) e^{-i theta}). PreconditionError if c meets the origin.
TorusChart theta_ep(const PlaneCurve& c, std::string label = "Theta_EP");
/// Clifford torus (r e^{i theta}, r e^{i s}) of normalized factor area r2,
/// in C2, or pushed into CP2 by E2 or into S2xS2 by E11.
TorusChart clifford(Space space, double r2);

/// The orbit torus of (gamma, gamma); gamma must have the mode's area.
TorusChart theta_cs(GammaMode mode, const PlaneCurve& gamma);
TorusChart theta_cs(GammaMode mode);

enum class ChekanovVariant { Plain, P, Prime };
/// Plain: E2 of rho_Ch(theta)(gamma, -gamma). P: the same after P.
/// Prime: [cos th sqrt2 gamma : sin th sqrt2 gamma : i sqrt(2 - 2|gamma|^2)].
TorusChart theta_ch_modified(ChekanovVariant v, const PlaneCurve& gamma);

/// [cos th - i tau sin th : sin th + i tau cos th : i sqrt(1 - tau^2)], |tau| < 1.
SurfaceChart cylinder_image_IZ();
/// Max quadric residual of the cylinder image over an n x n grid.
double quadric_membership(int n);
/// Area of the closed half tau >= 0 (sign > 0) or tau <= 0 (sign < 0).
double cylinder_half_area(int sign, int n);

/// z -> [cos th sqrt2 z : sin th sqrt2 z : i sqrt(2 - 2|z|^2)] on the half-disc.
AmbientJet fiber_disc_CP2(const Real& theta, const Cplx& z);
/// |sin th Z0 - cos th Z1| / |Z|.
double fiber_line_residual(double theta, const AmbientPoint& p);
/// Fiber coordinate z of a point on the line N_theta (inverse of fiber_disc_CP2).
Complex fiber_coordinate(double theta, const AmbientPoint& p);
/// Area of the full half-disc image by quadrature.
double fiber_half_disc_area(int n);

/// Geodesic circle about 1/sqrt2 in the half-disc whose fiber image encloses
/// Fubini-Study area 2/3.
PlaneCurve bc_fiber_curve(int n = 512);
/// The curve kappa in the half-disc with (1-|w|^2) Re(w^2) - (1/2 - |w|^2)^2 = -1/8.
PlaneCurve k_curve(int n = 1024);
/// (E1(w), P2 E1(w)).
AmbientJet antidiagonal_fiber_map(const Cplx& w);
/// rho_BC(theta) applied to antidiagonal_fiber_map(c(s)).
TorusChart transported_torus(const PlaneCurve& c, std::string label);

/// CP2: fiber_disc_CP2 over bc_fiber_curve. S2xS2: transported torus over k_curve.
TorusChart theta_bc(GammaMode mode);

/// Q(theta, tau) = ((1 - tau)/sqrt2 e^{i(th + pi/4)}, (1 + tau)/sqrt2 e^{-i(th + pi/4)})
/// and its image (E1, P2 E1). The image in B(1) x B(1) requires |tau| < sqrt2 - 1.
struct QSurfaces {
  SurfaceChart q, qtilde;
};
QSurfaces surfaces_Q();

/// |x3 + y3| and |x.y + 1/8| at a point of S2xS2.
std::array<double, 2> k_constraints(const AmbientPoint& p);

}  // namespace exotori
