#include "exotori/tori.hpp"

#include <cmath>
#include <random>
#include <sstream>

namespace exotori {

namespace {

const double kSqrt2 = std::sqrt(2.0);

Mat3J lift(const Mat3& m) {
  Mat3J r;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = Cplx(m[i][j]);
  return r;
}

Cplx i_times(const Real& x) { return {Real(0.0), x}; }

double max_entry(const Mat3& a) {
  double m = 0.0;
  for (const auto& row : a)
    for (const Complex x : row) m = std::max(m, std::abs(x));
  return m;
}

// Point with derivative v along one seed.
AmbientJet seeded(const AmbientPoint& p, const Tangent& v, std::size_t seed) {
  AmbientJet j;
  j.space = p.space;
  for (int k = 0; k < 3; ++k) {
    j.z[k] = Cplx(p.z[k]);
    j.z[k].re.d[seed] = v.z[k].real();
    j.z[k].im.d[seed] = v.z[k].imag();
  }
  for (int k = 0; k < 6; ++k) {
    j.x[k] = Real(p.x[k]);
    j.x[k].d[seed] = v.x[k];
  }
  return j;
}

}  // namespace

Mat3 identity3() {
  Mat3 m{};
  for (int i = 0; i < 3; ++i) m[i][i] = 1.0;
  return m;
}

Mat3 operator*(const Mat3& a, const Mat3& b) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      for (int k = 0; k < 3; ++k) r[i][j] += a[i][k] * b[k][j];
  return r;
}

Mat3 adjoint(const Mat3& a) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = std::conj(a[j][i]);
  return r;
}

double distance(const Mat3& a, const Mat3& b) {
  Mat3 d{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) d[i][j] = a[i][j] - b[i][j];
  return max_entry(d);
}

Mat3 value(const Mat3J& m) {
  Mat3 r{};
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) r[i][j] = m[i][j].value();
  return r;
}

AmbientJet apply_matrix(const Mat3J& m, const AmbientJet& p) {
  AmbientJet out = p;
  switch (p.space) {
    case Space::C2:
    case Space::CP2:
    case Space::CP1: {
      const int n = p.space == Space::CP2 ? 3 : 2;
      for (int i = 0; i < n; ++i) {
        Cplx acc(0.0);
        for (int j = 0; j < n; ++j) acc += m[i][j] * p.z[j];
        out.z[i] = acc;
      }
      break;
    }
    case Space::S2xS2:
    case Space::Sphere: {
      const int factors = p.space == Space::S2xS2 ? 2 : 1;
      for (int f = 0; f < factors; ++f)
        for (int i = 0; i < 3; ++i) {
          Real acc(0.0);
          for (int j = 0; j < 3; ++j) acc += m[i][j].re * p.x[3 * f + j];
          out.x[3 * f + i] = acc;
        }
      break;
    }
  }
  return out;
}

AmbientJet apply_matrix(const Mat3& m, const AmbientJet& p) { return apply_matrix(lift(m), p); }

AmbientPoint apply_matrix(const Mat3& m, const AmbientPoint& p) {
  return apply_matrix(m, seeded(p, Tangent{}, 0)).value();
}

Mat3 matrix_P() {
  const double h = 1.0 / kSqrt2;
  Mat3 m = identity3();
  m[0][0] = Complex(0, h);
  m[0][1] = -h;
  m[1][0] = h;
  m[1][1] = Complex(0, -h);
  return m;
}

Mat3 matrix_R_minus_quarter() {
  Mat3 m = identity3();
  m[0][0] = m[1][1] = std::polar(1.0, -kPi / 4);
  return m;
}

Mat3 matrix_P2() {
  Mat3 m{};
  m[0][0] = 1.0;
  m[1][1] = m[2][2] = -1.0;
  return m;
}

Mat3 rotation_x(double a) {
  Mat3 m{};
  m[0][0] = 1.0;
  m[1][1] = m[2][2] = std::cos(a);
  m[1][2] = -std::sin(a);
  m[2][1] = std::sin(a);
  return m;
}

CircleActionSpec rho_ep() {
  return {"rho_EP", Space::C2,
          [](const Real& a) {
            Mat3J m{};
            m[0][0] = cis(a);
            m[1][1] = cis(-a);
            m[2][2] = Cplx(1.0);
            return m;
          },
          [](const AmbientJet& p) { return (norm(p.z[0]) - norm(p.z[1])) / kTwoPi; }};
}

namespace {

Mat3J planar_rotation(const Real& a) {
  Mat3J m{};
  m[0][0] = Cplx(cos(a));
  m[0][1] = Cplx(-sin(a));
  m[1][0] = Cplx(sin(a));
  m[1][1] = Cplx(cos(a));
  m[2][2] = Cplx(1.0);
  return m;
}

}  // namespace

CircleActionSpec rho_ch() {
  return {"rho_Ch", Space::C2, planar_rotation,
          [](const AmbientJet& p) { return imag(p.z[0] * conj(p.z[1])) / kPi; }};
}

CircleActionSpec rho_bc() {
  return {"rho_BC", Space::S2xS2, planar_rotation,
          [](const AmbientJet& p) { return -(p.x[2] + p.x[5]) / kTwoPi; }};
}

AmbientJet act(const CircleActionSpec& spec, double alpha, const AmbientJet& p) {
  if (p.space != spec.space) throw PreconditionError("act: space mismatch for " + spec.name);
  return apply_matrix(value(spec.matrix(Real(alpha))), p);
}

AmbientPoint act(const CircleActionSpec& spec, double alpha, const AmbientPoint& p) {
  return act(spec, alpha, seeded(p, Tangent{}, 0)).value();
}

double check_generates(const CircleActionSpec& spec, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  const auto random_vec = [&] {
    std::array<double, 3> v{g(rng), g(rng), g(rng)};
    return v;
  };
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    AmbientPoint p;
    Tangent v;
    p.space = spec.space;
    if (spec.space == Space::S2xS2) {
      for (int f = 0; f < 2; ++f) {
        auto x = random_vec();
        const double n = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
        auto w = random_vec();
        const double dot = (w[0] * x[0] + w[1] * x[1] + w[2] * x[2]) / (n * n);
        for (int k = 0; k < 3; ++k) {
          p.x[3 * f + k] = kSphereRadius * x[k] / n;
          v.x[3 * f + k] = w[k] - dot * x[k];
        }
      }
    } else {
      for (int k = 0; k < 3; ++k) {
        p.z[k] = Complex(g(rng), g(rng));
        v.z[k] = Complex(g(rng), g(rng));
      }
      if (spec.space == Space::C2) p.z[2] = v.z[2] = 0.0;
    }
    // Generator X = d/d alpha M(alpha) p at alpha = 0, along seed 1.
    const AmbientJet moved = apply_matrix(spec.matrix(Real::variable(0.0, 1)), seeded(p, Tangent{}, 0));
    const Tangent X = moved.partial(1);
    const double dH = spec.hamiltonian(seeded(p, v, 0)).d[0];
    worst = std::max(worst, std::abs(omega(p, X, v) + dH));
  }
  return worst;
}

double group_law_residual(const CircleActionSpec& spec, int n) {
  double worst = distance(value(spec.matrix(Real(0.0))), identity3());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double a = kTwoPi * i / n, b = kTwoPi * j / n + 0.1;
      const Mat3 lhs = value(spec.matrix(Real(a))) * value(spec.matrix(Real(b)));
      worst = std::max(worst, distance(lhs, value(spec.matrix(Real(a + b)))));
    }
  return worst;
}

double conjugation_identity_check(int n) {
  const Mat3 P = matrix_P(), Ps = adjoint(P);
  double worst = distance(Ps * P, identity3());
  const Complex det = P[0][0] * P[1][1] - P[0][1] * P[1][0];
  worst = std::max(worst, std::abs(det - 1.0));
  for (int k = 0; k < n; ++k) {
    const double t = kTwoPi * k / n;
    worst = std::max(worst, distance(Ps * value(rho_ep().matrix(Real(t))) * P, value(rho_ch().matrix(Real(t)))));
  }
  return worst;
}

AmbientJet TorusChart::operator()(double theta, double s) const {
  return map(Real::variable(theta, 0), Real::variable(s, 1));
}

AmbientJet SurfaceChart::operator()(double theta, double tau) const {
  return map(Real::variable(theta, 0), Real::variable(tau, 1));
}

TorusChart transformed(const TorusChart& c, const Mat3& m, std::string label) {
  const Mat3J mj = lift(m);
  const auto inner = c.map;
  return {std::move(label), c.space, [inner, mj](const Real& th, const Real& s) { return apply_matrix(mj, inner(th, s)); }};
}

std::array<Cplx, 2> chekanov_map_I(const Real& tau, const Real& theta, const Real& y, const Real& x) {
  const Cplx w = exact_symplecto_f(x, y);
  const Real e = exp(-x), c = cos(theta), s = sin(theta);
  return {w * c - i_times(tau * e * s), w * s + i_times(tau * e * c)};
}

std::array<Complex, 2> chekanov_map_I(double tau, double theta, double y, double x) {
  const auto z = chekanov_map_I(Real(tau), Real(theta), Real(y), Real(x));
  return {z[0].value(), z[1].value()};
}

TorusChart theta_ch(double r2) {
  if (!(r2 > 0.0)) throw PreconditionError("theta_ch: r2 must be positive");
  const double rho = std::sqrt(2.0 * r2);
  return {"Theta_Ch", Space::C2, [rho](const Real& th, const Real& s) {
            const auto z = chekanov_map_I(Real(0.0), th, rho * sin(s), rho * cos(s));
            AmbientJet p;
            p.z = {z[0], z[1], Cplx(0.0)};
            return p;
          }};
}

TorusChart theta_ep(const PlaneCurve& c, std::string label) {
  double m = 1e300;
  for (const Complex z : c.samples(1024)) m = std::min(m, std::abs(z));
  if (!(m > 1e-9)) throw PreconditionError("theta_ep: curve meets the origin");
  return {std::move(label), Space::C2, [c](const Real& th, const Real& s) {
            const Cplx w = c.eval(s);
            AmbientJet p;
            p.z = {w * cis(th), w * cis(-th), Cplx(0.0)};
            return p;
          }};
}

TorusChart clifford(Space space, double r2) {
  if (!(r2 > 0.0)) throw PreconditionError("clifford: r2 must be positive");
  const double r = std::sqrt(r2);
  const std::string label = "Clifford(" + std::string(to_string(space)) + ")";
  return {label, space, [r, space](const Real& th, const Real& s) {
            const Cplx a = r * cis(th), b = r * cis(s);
            switch (space) {
              case Space::C2: {
                AmbientJet p;
                p.z = {a, b, Cplx(0.0)};
                return p;
              }
              case Space::CP2:
                return embed_E2(a, b);
              case Space::S2xS2:
                return embed_E11(a, b);
              default:
                throw ContractViolation("clifford: unsupported space");
            }
          }};
}

namespace {

void require_area(const PlaneCurve& gamma, double target, const char* who) {
  const double a = enclosed_area(gamma);
  if (std::abs(a - target) > 1e-9) {
    std::ostringstream msg;
    msg << who << ": curve area " << a << " differs from " << target;
    throw PreconditionError(msg.str());
  }
}

}  // namespace

TorusChart theta_cs(GammaMode mode, const PlaneCurve& gamma) {
  require_area(gamma, gamma_target_area(mode), "theta_cs");
  if (mode == GammaMode::CP2)
    return {"Theta_CS(CP2)", Space::CP2, [gamma](const Real& th, const Real& s) {
              const Cplx g = gamma.eval(s);
              return embed_E2(g * cis(th), g * cis(-th));
            }};
  return {"Theta_CS(S2xS2)", Space::S2xS2, [gamma](const Real& th, const Real& s) {
            const Cplx g = gamma.eval(s);
            return embed_E11(g * cis(th), g * cis(-th));
          }};
}

TorusChart theta_cs(GammaMode mode) { return theta_cs(mode, make_gamma(mode)); }

TorusChart theta_ch_modified(ChekanovVariant v, const PlaneCurve& gamma) {
  require_area(gamma, 1.0 / 3.0, "theta_ch_modified");
  const auto plain = [gamma](const Real& th, const Real& s) {
    const Cplx g = gamma.eval(s);
    const Real c = cos(th), sn = sin(th);
    // rho_Ch(theta) applied to (gamma, -gamma).
    return embed_E2(g * (c + sn), g * (sn - c));
  };
  switch (v) {
    case ChekanovVariant::Plain:
      return {"Theta~_Ch", Space::CP2, plain};
    case ChekanovVariant::P:
      return transformed({"", Space::CP2, plain}, matrix_P(), "Theta~_Ch^P");
    case ChekanovVariant::Prime:
      break;
  }
  return {"Theta~'_Ch", Space::CP2,
          [gamma](const Real& th, const Real& s) { return fiber_disc_CP2(th, gamma.eval(s)); }};
}

SurfaceChart cylinder_image_IZ() {
  SurfaceChart c;
  c.label = "I(Z)";
  c.space = Space::CP2;
  c.map = [](const Real& th, const Real& tau) {
    if (!(std::abs(tau.v) < 1.0)) throw DomainError("cylinder_image_IZ: |tau| must be < 1");
    const Real co = cos(th), si = sin(th);
    AmbientJet p;
    p.space = Space::CP2;
    p.z = {Cplx(co, -tau * si), Cplx(si, tau * co), i_times(sqrt(1.0 - tau * tau))};
    return p;
  };
  return c;
}

double quadric_membership(int n) {
  const auto c = cylinder_image_IZ();
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double tau = -1.0 + 2.0 * (j + 0.5) / n;
      worst = std::max(worst, hypersurface_residuals(c(kTwoPi * i / n, tau).value()).at("quadric"));
    }
  return worst;
}

double cylinder_half_area(int sign, int n) {
  // tau = sign * sin(phi) removes the square-root behaviour at the ends.
  const auto c = cylinder_image_IZ();
  const auto rule = gauss_legendre(n, 0.0, kPi / 2);
  double total = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Real phi = Real::variable(rule.nodes[k], 1);
    const Real tau = static_cast<double>(sign) * sin(phi);
    total += rule.weights[k] * integrate_periodic(
                                   [&](double th) {
                                     const AmbientJet p = c.map(Real::variable(th, 0), tau);
                                     return omega(p.value(), p.partial(0), p.partial(1));
                                   },
                                   PeriodicGrid(n));
  }
  return std::abs(total);
}

AmbientJet fiber_disc_CP2(const Real& theta, const Cplx& z) {
  const Real n2 = norm(z);
  if (!(n2.v < 1.0)) throw DomainError("fiber_disc_CP2: |z| must be < 1");
  AmbientJet p;
  p.space = Space::CP2;
  p.z = {kSqrt2 * z * cos(theta), kSqrt2 * z * sin(theta), i_times(sqrt(2.0 - 2.0 * n2))};
  return p;
}

double fiber_line_residual(double theta, const AmbientPoint& p) {
  const double n = std::sqrt(std::norm(p.z[0]) + std::norm(p.z[1]) + std::norm(p.z[2]));
  return std::abs(std::sin(theta) * p.z[0] - std::cos(theta) * p.z[1]) / n;
}

Complex fiber_coordinate(double theta, const AmbientPoint& p) {
  const double n = std::sqrt(std::norm(p.z[0]) + std::norm(p.z[1]) + std::norm(p.z[2]));
  if (!(std::abs(p.z[2]) > 1e-14 * n)) throw DomainError("fiber_coordinate: point on the fiber boundary");
  const Complex phase = Complex(0.0, std::abs(p.z[2])) / p.z[2] * (kSqrt2 / n);
  return (p.z[0] * std::cos(theta) + p.z[1] * std::sin(theta)) * phase / kSqrt2;
}

double fiber_half_disc_area(int n) {
  const auto rr = gauss_legendre(n, 0.0, 1.0), ra = gauss_legendre(n, -kPi / 2, kPi / 2);
  double total = 0.0;
  for (std::size_t i = 0; i < rr.nodes.size(); ++i)
    for (std::size_t j = 0; j < ra.nodes.size(); ++j) {
      const Real rho = Real::variable(rr.nodes[i], 0), phi = Real::variable(ra.nodes[j], 1);
      const AmbientJet p = fiber_disc_CP2(Real(0.0), Cplx(rho * cos(phi), rho * sin(phi)));
      total += rr.weights[i] * ra.weights[j] * omega(p.value(), p.partial(0), p.partial(1));
    }
  return total;
}

PlaneCurve bc_fiber_curve(int n) {
  // Disc-model coordinate w of the fiber line centred at its equator point;
  // |w|^2 = 1/2 bounds Fubini-Study area 2 * (1/2) / (1 + 1/2) = 2/3.
  const auto z_of = [](double s) {
    const Complex I(0.0, 1.0);
    const Complex w = std::polar(1.0 / kSqrt2, s);
    const Complex u = (I - w) / (I * w - 1.0);
    const Complex v = I * u;
    return v / std::sqrt(1.0 + std::norm(v));
  };
  PlaneCurve c = PlaneCurve::from_function(z_of, n, n / 2 - 1);
  if (c.orientation() < 0) c = PlaneCurve::from_function([&](double s) { return z_of(-s); }, n, n / 2 - 1);
  return c;
}

PlaneCurve k_curve(int n) {
  constexpr double anchor = 0.6125;
  const auto F = [](Complex w) {
    const double r2 = std::norm(w);
    return (1.0 - r2) * std::real(w * w) - (0.5 - r2) * (0.5 - r2) + 0.125;
  };
  std::vector<Complex> pts(n);
  for (int j = 0; j < n; ++j) {
    const Complex dir = std::polar(1.0, kTwoPi * j / n);
    const double b = anchor * dir.real();
    double rmax = -b + std::sqrt(b * b - anchor * anchor + 1.0);
    if (dir.real() < 0.0) rmax = std::min(rmax, anchor / -dir.real());
    const double r = bisect([&](double t) { return F(anchor + t * dir); }, 0.0, rmax * (1.0 - 1e-12), 1e-15);
    pts[j] = anchor + r * dir;
  }
  return PlaneCurve::from_samples(pts, 128);
}

AmbientJet antidiagonal_fiber_map(const Cplx& w) {
  const auto e = embed_E1(w);
  AmbientJet p;
  p.space = Space::S2xS2;
  p.x = {e[0], e[1], e[2], e[0], -e[1], -e[2]};
  return p;
}

TorusChart transported_torus(const PlaneCurve& c, std::string label) {
  const auto spec = rho_bc();
  return {std::move(label), Space::S2xS2, [c, spec](const Real& th, const Real& s) {
            return apply_matrix(spec.matrix(th), antidiagonal_fiber_map(c.eval(s)));
          }};
}

TorusChart theta_bc(GammaMode mode) {
  if (mode == GammaMode::CP2) {
    const PlaneCurve zc = bc_fiber_curve();
    return {"Theta_BC(CP2)", Space::CP2,
            [zc](const Real& th, const Real& s) { return fiber_disc_CP2(th, zc.eval(s)); }};
  }
  return transported_torus(k_curve(), "Theta_BC(S2xS2)");
}

QSurfaces surfaces_Q() {
  QSurfaces out;
  const auto q = [](const Real& th, const Real& tau) {
    const Real phi = th + kPi / 4;
    AmbientJet p;
    p.z = {((1.0 - tau) / kSqrt2) * cis(phi), ((1.0 + tau) / kSqrt2) * cis(-phi), Cplx(0.0)};
    return p;
  };
  out.q = {"Q", Space::C2, -1.0, 1.0, q};
  const double lim = kSqrt2 - 1.0;
  out.qtilde = {"Q~", Space::S2xS2, -lim, lim, [q](const Real& th, const Real& tau) {
                  const AmbientJet p = q(th, tau);
                  const auto x = embed_E1(p.z[0]), y = embed_E1(p.z[1]);
                  AmbientJet r;
                  r.space = Space::S2xS2;
                  r.x = {x[0], x[1], x[2], y[0], -y[1], -y[2]};
                  return r;
                }};
  return out;
}

std::array<double, 2> k_constraints(const AmbientPoint& p) {
  const auto& x = p.x;
  return {std::abs(x[2] + x[5]), std::abs(x[0] * x[3] + x[1] * x[4] + x[2] * x[5] + 0.125)};
}

}  // namespace exotori
