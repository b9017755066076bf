#include "exotori/spaces.hpp"

#include <cmath>

namespace exotori {

std::string_view to_string(Space s) {
  switch (s) {
    case Space::C2: return "C2";
    case Space::CP2: return "CP2";
    case Space::S2xS2: return "S2xS2";
    case Space::CP1: return "CP1";
    case Space::Sphere: return "Sphere";
  }
  return "?";
}

AmbientPoint AmbientJet::value() const {
  AmbientPoint p;
  p.space = space;
  for (int k = 0; k < 3; ++k) p.z[k] = z[k].value();
  for (int k = 0; k < 6; ++k) p.x[k] = x[k].v;
  return p;
}

Tangent AmbientJet::partial(std::size_t seed) const {
  Tangent t;
  for (int k = 0; k < 3; ++k) t.z[k] = z[k].partial(seed);
  for (int k = 0; k < 6; ++k) t.x[k] = x[k].d[seed];
  return t;
}

namespace {

int homogeneous_dim(Space s) { return s == Space::CP2 ? 3 : 2; }

Complex hermitian(const Complex* a, const Complex* b, int n) {
  Complex s = 0.0;
  for (int k = 0; k < n; ++k) s += std::conj(a[k]) * b[k];
  return s;
}

double fubini_study(const Complex* z, const Complex* u, const Complex* v, int n, double scale) {
  const double n2 = std::real(hermitian(z, z, n));
  const double len = std::sqrt(n2);
  std::array<Complex, 3> zh{}, uh{}, vh{};
  for (int k = 0; k < n; ++k) zh[k] = z[k] / len;
  const Complex cu = hermitian(zh.data(), u, n);
  const Complex cv = hermitian(zh.data(), v, n);
  for (int k = 0; k < n; ++k) {
    uh[k] = (u[k] - cu * zh[k]) / len;
    vh[k] = (v[k] - cv * zh[k]) / len;
  }
  return scale * std::imag(hermitian(uh.data(), vh.data(), n));
}

double sphere_form(const double* x, const double* u, const double* v) {
  const double r2 = x[0] * x[0] + x[1] * x[1] + x[2] * x[2];
  const double un = std::sqrt(u[0] * u[0] + u[1] * u[1] + u[2] * u[2]);
  const double vn = std::sqrt(v[0] * v[0] + v[1] * v[1] + v[2] * v[2]);
  const double xu = x[0] * u[0] + x[1] * u[1] + x[2] * u[2];
  const double xv = x[0] * v[0] + x[1] * v[1] + x[2] * v[2];
  if (std::abs(xu) > 1e-8 * un || std::abs(xv) > 1e-8 * vn)
    throw ContractViolation("omega: vector not tangent to the sphere");
  const double c0 = u[1] * v[2] - u[2] * v[1];
  const double c1 = u[2] * v[0] - u[0] * v[2];
  const double c2 = u[0] * v[1] - u[1] * v[0];
  // Area form of a radius-R sphere scaled to total area 1: x.(u x v)/(4 pi R^3).
  const double r = std::sqrt(r2);
  return (x[0] * c0 + x[1] * c1 + x[2] * c2) / (4.0 * kPi * r2 * r);
}

void require_ball(double n2, double bound, const char* what) {
  if (!(n2 < bound)) throw DomainError(std::string(what) + ": point outside the ball");
}

}  // namespace

double omega(const AmbientPoint& p, const Tangent& u, const Tangent& v) {
  switch (p.space) {
    case Space::C2: {
      double s = 0.0;
      for (int k = 0; k < 2; ++k) s += std::imag(std::conj(u.z[k]) * v.z[k]);
      return s / kPi;
    }
    case Space::CP2:
      return fubini_study(p.z.data(), u.z.data(), v.z.data(), 3, kFubiniStudyCP2);
    case Space::CP1:
      return fubini_study(p.z.data(), u.z.data(), v.z.data(), 2, kFubiniStudyCP1);
    case Space::S2xS2:
      return sphere_form(p.x.data(), u.x.data(), v.x.data()) +
             sphere_form(p.x.data() + 3, u.x.data() + 3, v.x.data() + 3);
    case Space::Sphere:
      return sphere_form(p.x.data(), u.x.data(), v.x.data());
  }
  return 0.0;
}

double liouville(const AmbientPoint& p, const Tangent& u) {
  if (p.space != Space::C2) throw ContractViolation("liouville: only defined on C2");
  double s = 0.0;
  for (int k = 0; k < 2; ++k) s += std::imag(std::conj(p.z[k]) * u.z[k]);
  return s / kTwoPi;
}

AmbientPoint normalize(const AmbientPoint& p) {
  if (p.space != Space::CP2 && p.space != Space::CP1) return p;
  const int n = homogeneous_dim(p.space);
  const double len = std::sqrt(std::real(hermitian(p.z.data(), p.z.data(), n)));
  if (len == 0.0) throw DomainError("normalize: zero homogeneous vector");
  // The largest coordinate fixes the phase when the first one is negligible.
  int lead = 0;
  while (lead < n - 1 && std::abs(p.z[lead]) <= 1e-14 * len) ++lead;
  const Complex phase = std::conj(p.z[lead]) / std::abs(p.z[lead]);
  AmbientPoint q = p;
  for (int k = 0; k < n; ++k) q.z[k] = p.z[k] * phase / len;
  q.z[lead] = std::abs(q.z[lead]);
  return q;
}

AmbientJet embed_E2(const Cplx& z0, const Cplx& z1) {
  const Real rest = 2.0 - norm(z0) - norm(z1);
  require_ball(2.0 - rest.v, 2.0, "embed_E2");
  AmbientJet p;
  p.space = Space::CP2;
  p.z = {z0, z1, Cplx(sqrt(rest))};
  return p;
}

AmbientJet embed_E2_tilde(const Cplx& z0, const Cplx& z1) {
  const Real rest = 2.0 - norm(z0) - norm(z1);
  require_ball(2.0 - rest.v, 2.0, "embed_E2_tilde");
  AmbientJet p;
  p.space = Space::CP2;
  p.z = {z0, z1, Cplx(Real(0.0), sqrt(rest))};
  return p;
}

std::array<Cplx, 4> embed_E11_homogeneous(const Cplx& z0, const Cplx& z1) {
  const Real n0 = norm(z0), n1 = norm(z1);
  require_ball(n0.v, 1.0, "embed_E11");
  require_ball(n1.v, 1.0, "embed_E11");
  return {z0, Cplx(sqrt(1.0 - n0)), z1, Cplx(sqrt(1.0 - n1))};
}

std::array<Real, 3> hopf(const Cplx& a, const Cplx& b) {
  const Cplx ab = a * conj(b);
  return {ab.re, ab.im, 0.5 * (norm(b) - norm(a))};
}

std::array<Complex, 2> hopf_inverse(const std::array<double, 3>& x) {
  const double r = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
  // Rescale to radius 1/2 so slightly-off inputs still map to unit vectors.
  const double s = kSphereRadius / r;
  const double x3 = x[2] * s;
  const double b2 = 0.5 + x3;
  if (b2 <= 1e-300) return {Complex(1.0), Complex(0.0)};
  const double b = std::sqrt(b2);
  return {Complex(x[0] * s, x[1] * s) / b, Complex(b)};
}

AmbientJet embed_E11(const Cplx& z0, const Cplx& z1) {
  const auto h = embed_E11_homogeneous(z0, z1);
  const auto x = hopf(h[0], h[1]);
  const auto y = hopf(h[2], h[3]);
  AmbientJet p;
  p.space = Space::S2xS2;
  p.x = {x[0], x[1], x[2], y[0], y[1], y[2]};
  return p;
}

std::array<Real, 3> embed_E1(const Cplx& z) {
  const Real n = norm(z);
  require_ball(n.v, 1.0, "embed_E1");
  const Real w = sqrt(1.0 - n);
  return {w * z.re, w * z.im, 0.5 - n};
}

double pullback_defect(Embedding which, const std::array<Complex, 2>& z,
                       const std::array<Complex, 2>& u, const std::array<Complex, 2>& v) {
  auto seed = [](Complex value, Complex du, Complex dv) {
    return Cplx(Real(value.real(), {du.real(), dv.real(), 0.0}),
                Real(value.imag(), {du.imag(), dv.imag(), 0.0}));
  };
  const Cplx a = seed(z[0], u[0], v[0]);
  const Cplx b = seed(z[1], u[1], v[1]);
  AmbientJet img;
  double source = 0.0;
  switch (which) {
    case Embedding::E2: img = embed_E2(a, b); break;
    case Embedding::E2Tilde: img = embed_E2_tilde(a, b); break;
    case Embedding::E11: img = embed_E11(a, b); break;
    case Embedding::E1: {
      const auto x = embed_E1(a);
      img.space = Space::Sphere;
      img.x = {x[0], x[1], x[2], Real(), Real(), Real()};
      source = std::imag(std::conj(u[0]) * v[0]) / kPi;
      break;
    }
  }
  if (which != Embedding::E1) {
    AmbientPoint p;
    p.space = Space::C2;
    Tangent tu, tv;
    tu.z = {u[0], u[1], 0.0};
    tv.z = {v[0], v[1], 0.0};
    source = omega(p, tu, tv);
  }
  return std::abs(omega(img.value(), img.partial(0), img.partial(1)) - source);
}

double rp2_distance(const std::array<Complex, 3>& z) {
  double n2 = 0.0;
  for (const auto& c : z) n2 += std::norm(c);
  const double len = std::sqrt(n2);
  std::array<double, 3> re{}, im{};
  Complex q = 0.0;
  for (int k = 0; k < 3; ++k) {
    const Complex w = z[k] / len;
    re[k] = w.real();
    im[k] = w.imag();
    q += w * w;
  }
  // 1 - |q|^2 = 4 |re x im|^2 for unit z; avoids cancellation near RP2.
  const double c0 = re[1] * im[2] - re[2] * im[1];
  const double c1 = re[2] * im[0] - re[0] * im[2];
  const double c2 = re[0] * im[1] - re[1] * im[0];
  const double cross = std::sqrt(c0 * c0 + c1 * c1 + c2 * c2);
  return 2.0 * std::sqrt(2.0) * cross / std::sqrt(1.0 + std::abs(q));
}

ResidualMap hypersurface_residuals(const AmbientPoint& p) {
  ResidualMap out;
  switch (p.space) {
    case Space::CP2: {
      double n2 = 0.0;
      Complex q = 0.0;
      for (const auto& c : p.z) {
        n2 += std::norm(c);
        q += c * c;
      }
      out["quadric"] = std::abs(q) / n2;
      out["rp2"] = rp2_distance(p.z);
      break;
    }
    case Space::S2xS2: {
      const auto a = hopf_inverse({p.x[0], p.x[1], p.x[2]});
      const auto b = hopf_inverse({p.x[3], p.x[4], p.x[5]});
      out["diagonal"] = std::abs(a[0] * b[1] - b[0] * a[1]);
      out["antidiagonal"] = std::abs(a[0] * std::conj(b[0]) + a[1] * std::conj(b[1]));
      break;
    }
    default:
      throw ContractViolation("hypersurface_residuals: no distinguished hypersurfaces in " +
                              std::string(to_string(p.space)));
  }
  return out;
}

double projective_line_area(Space space, int n) {
  if (space != Space::CP2 && space != Space::CP1)
    throw ContractViolation("projective_line_area: needs CP2 or CP1");
  // Affine chart [1 : tan(phi) e^{i alpha} (: 0)]; the point at infinity has measure zero.
  const QuadratureRule radial = gauss_legendre(n, 0.0, 0.5 * kPi);
  const PeriodicGrid angular(n);
  double total = 0.0;
  for (std::size_t i = 0; i < radial.nodes.size(); ++i) {
    const double ring = integrate_periodic(
        [&](double alpha) {
          const Real phi = Real::variable(radial.nodes[i], 0);
          const Real a = Real::variable(alpha, 1);
          AmbientJet p;
          p.space = space;
          p.z = {Cplx(1.0), (sin(phi) / cos(phi)) * cis(a), Cplx(0.0)};
          return omega(p.value(), p.partial(0), p.partial(1));
        },
        angular);
    total += radial.weights[i] * ring;
  }
  return total;
}

}  // namespace exotori
