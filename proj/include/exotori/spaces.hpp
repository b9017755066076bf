#pragma once

// Ambient symplectic spaces and their normalizations.
//
//   C2      omega = (1/pi) sum dx_k ^ dy_k,  lambda = (1/2pi) sum (x dy - y dx),
//           so a circle of radius r bounds normalized area r^2.
//   CP2     Fubini-Study, every projective line has area 2.
//   CP1     Fubini-Study, total area 1.
//   S2xS2   product of two radius-1/2 spheres in R^3, each of area 1;
//           identified with CP1 x CP1 through the Hopf map
//           [a:b] -> (Re(a conj b), Im(a conj b), (|b|^2 - |a|^2)/2).
//   Sphere  a single radius-1/2 sphere.
//
// Projective points are stored as (possibly unnormalized) homogeneous
// coordinates; omega is evaluated on the horizontal projection of tangent
// representatives, which makes it independent of the lift.

#include <array>
#include <complex>
#include <map>
#include <string>
#include <string_view>

#include "exotori/jet.hpp"
#include "exotori/numkernel.hpp"

namespace exotori {

enum class Space { C2, CP2, S2xS2, CP1, Sphere };

std::string_view to_string(Space s);

using Complex = std::complex<double>;

/// A point of an ambient space. C2 uses z[0..1]; CP2 uses z[0..2]
/// (homogeneous); CP1 uses z[0..1] (homogeneous); S2xS2 uses x[0..5]
/// (two radius-1/2 vectors); Sphere uses x[0..2].
struct AmbientPoint {
  Space space = Space::C2;
  std::array<Complex, 3> z{};
  std::array<double, 6> x{};
};

/// Tangent representative with the same layout as AmbientPoint.
struct Tangent {
  std::array<Complex, 3> z{};
  std::array<double, 6> x{};
};

/// Point with first derivatives along the three seed variables.
struct AmbientJet {
  Space space = Space::C2;
  std::array<Cplx, 3> z{};
  std::array<Real, 6> x{};

  AmbientPoint value() const;
  Tangent partial(std::size_t seed) const;
};

// Normalization constants, frozen: CP2 line area 2, CP1 area 1.
inline constexpr double kFubiniStudyCP2 = 2.0 / kPi;
inline constexpr double kFubiniStudyCP1 = 1.0 / kPi;
inline constexpr double kSphereRadius = 0.5;

/// Symplectic form at p on two tangent representatives. For spheres the
/// vectors must be tangent (|<x,u>| small), otherwise ContractViolation.
double omega(const AmbientPoint& p, const Tangent& u, const Tangent& v);

/// Liouville primitive on C2.
double liouville(const AmbientPoint& p, const Tangent& u);

/// Unit Hermitian norm, first nonzero coordinate real-positive. Identity on
/// C2 and sphere spaces.
AmbientPoint normalize(const AmbientPoint& p);

// Embeddings. All take jets so pullbacks can be evaluated exactly; values are
// range-checked and throw DomainError outside the ball/polydisc.

/// [z0 : z1 : sqrt(2 - |z0|^2 - |z1|^2)] on B(2).
AmbientJet embed_E2(const Cplx& z0, const Cplx& z1);
/// [z0 : z1 : i sqrt(2 - |z0|^2 - |z1|^2)] on B(2).
AmbientJet embed_E2_tilde(const Cplx& z0, const Cplx& z1);
/// ([z0 : sqrt(1-|z0|^2)], [z1 : sqrt(1-|z1|^2)]) on B(1) x B(1), returned as
/// homogeneous coordinates (z0, w0, z1, w1).
std::array<Cplx, 4> embed_E11_homogeneous(const Cplx& z0, const Cplx& z1);
/// E11 followed by the Hopf map: a point of S2xS2 in sphere coordinates.
AmbientJet embed_E11(const Cplx& z0, const Cplx& z1);
/// B(1) -> radius-1/2 sphere: (sqrt(1-|z|^2) a, sqrt(1-|z|^2) b, 1/2 - |z|^2).
std::array<Real, 3> embed_E1(const Cplx& z);

/// Hopf map of a homogeneous CP1 point onto the radius-1/2 sphere.
std::array<Real, 3> hopf(const Cplx& a, const Cplx& b);
/// Unit homogeneous coordinates of a radius-1/2 sphere point (inverse Hopf).
std::array<Complex, 2> hopf_inverse(const std::array<double, 3>& x);

enum class Embedding { E2, E2Tilde, E11, E1 };

/// |E^* omega_target(u, v) - omega_C2(u, v)| at z. For E1 only the first
/// complex coordinate of z, u, v is used.
double pullback_defect(Embedding which, const std::array<Complex, 2>& z,
                       const std::array<Complex, 2>& u, const std::array<Complex, 2>& v);

/// Named residuals for the distinguished hypersurfaces:
///   CP2:   "quadric" |z0^2+z1^2+z2^2| / |z|^2, "rp2" distance to RP2
///   S2xS2: "diagonal" |z0 w1 - z1 w0|, "antidiagonal" |z0 conj(z1) + w0 conj(w1)|
///          on unit homogeneous representatives
using ResidualMap = std::map<std::string, double>;
ResidualMap hypersurface_residuals(const AmbientPoint& p);

/// min over phases of |e^{i phi} z - conj(e^{i phi} z)| for unit-norm z.
double rp2_distance(const std::array<Complex, 3>& z);

/// Numerically integrated area of {z2 = 0} in CP2 (space == CP2) or of CP1
/// (space == CP1), with n-point rules in each direction.
double projective_line_area(Space space, int n);

}  // namespace exotori
