#include "exotori/pipeline.hpp"

#include <bit>
#include <cmath>
#include <random>
#include <sstream>

#include "exotori/verify.hpp"

namespace exotori {

namespace {

const double kSqrt2 = std::sqrt(2.0);
constexpr double kLagrangianTol = 1e-8;
constexpr double kIdentityTol = 1e-10;
constexpr double kHausdorffTol = 1e-6;
constexpr double kAreaTol = 1e-6;

std::string sq(int n) { return std::to_string(n) + "x" + std::to_string(n); }

bool power_of_two_at_least_32(int n) { return n >= 32 && (n & (n - 1)) == 0; }

// |M^* M - I| on the leading k x k block, plus |det - 1| when special.
double unitary_defect(const Mat3& m, int k, bool special) {
  Mat3 b{};
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) b[i][j] = m[i][j];
  Mat3 id{};
  for (int i = 0; i < k; ++i) id[i][i] = 1.0;
  double d = distance(adjoint(b) * b, id);
  if (special) {
    const Complex det = k == 2 ? b[0][0] * b[1][1] - b[0][1] * b[1][0]
                               : b[0][0] * (b[1][1] * b[2][2] - b[1][2] * b[2][1]) -
                                     b[0][1] * (b[1][0] * b[2][2] - b[1][2] * b[2][0]) +
                                     b[0][2] * (b[1][0] * b[2][1] - b[1][1] * b[2][0]);
    d = std::max(d, std::abs(det - 1.0));
  }
  return d;
}

// Area of one radius-1/2 sphere factor: E1 pulled back over the unit disc.
double sphere_factor_area(int n) {
  const auto rr = gauss_legendre(n, 0.0, 1.0);
  double total = 0.0;
  for (std::size_t i = 0; i < rr.nodes.size(); ++i) {
    const Real rho = Real::variable(rr.nodes[i], 0);
    total += rr.weights[i] * integrate_periodic(
                                 [&](double a) {
                                   const Real phi = Real::variable(a, 1);
                                   const auto e = embed_E1(Cplx(rho * cos(phi), rho * sin(phi)));
                                   AmbientJet p;
                                   p.space = Space::Sphere;
                                   p.x = {e[0], e[1], e[2], Real(0.0), Real(0.0), Real(0.0)};
                                   return omega(p.value(), p.partial(0), p.partial(1));
                                 },
                                 PeriodicGrid(n));
  }
  return total;
}

double embedding_defect(Embedding which, int samples, unsigned seed) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> g;
  std::uniform_real_distribution<double> u(0.0, 1.0);
  const auto gauss = [&] { return Complex(g(rng), g(rng)); };
  double worst = 0.0;
  for (int i = 0; i < samples; ++i) {
    std::array<Complex, 2> z{gauss(), gauss()};
    if (which == Embedding::E2 || which == Embedding::E2Tilde) {
      const double len = std::sqrt(std::norm(z[0]) + std::norm(z[1]));
      const double r = kSqrt2 * 0.999 * u(rng);
      z = {z[0] * r / len, z[1] * r / len};
    } else {
      z = {std::polar(0.999 * std::sqrt(u(rng)), kTwoPi * u(rng)), std::polar(0.999 * std::sqrt(u(rng)), kTwoPi * u(rng))};
    }
    worst = std::max(worst, pullback_defect(which, z, {gauss(), gauss()}, {gauss(), gauss()}));
  }
  return worst;
}

double rho_invariance(const TorusChart& c, const CircleActionSpec& spec, int n, double shift = 0.0) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double th = kTwoPi * i / n, s = kTwoPi * j / n, a = 0.3 + kTwoPi * j / n;
      const AmbientPoint moved = act(spec, a, c(th, s).value());
      const AmbientPoint there = c(th + a + shift, s).value();
      for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(moved.z[k] - there.z[k]));
      for (int k = 0; k < 6; ++k) worst = std::max(worst, std::abs(moved.x[k] - there.x[k]));
    }
  return worst;
}

// Curve samples as CSV rows (s, re, im).
std::string curve_csv(const PlaneCurve& c, int n) {
  std::ostringstream out;
  out.precision(17);
  out << "s,re,im\n";
  for (int j = 0; j <= n; ++j) {
    const double s = kTwoPi * j / n;
    const Complex z = c(s);
    out << s << ',' << z.real() << ',' << z.imag() << '\n';
  }
  return out.str();
}

std::string torus_csv(const TorusChart& t, int n) {
  std::ostringstream out;
  out.precision(17);
  out << "theta,s";
  if (t.space == Space::C2) out << ",re0,im0,re1,im1\n";
  if (t.space == Space::CP2) out << ",re0,im0,re1,im1,re2,im2\n";
  if (t.space == Space::S2xS2) out << ",x1,x2,x3,y1,y2,y3\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double th = kTwoPi * i / n, s = kTwoPi * j / n;
      const AmbientPoint p = normalize(t(th, s).value());
      out << th << ',' << s;
      if (t.space == Space::S2xS2) {
        for (int k = 0; k < 6; ++k) out << ',' << p.x[k];
      } else {
        const int m = t.space == Space::CP2 ? 3 : 2;
        for (int k = 0; k < m; ++k) out << ',' << p.z[k].real() << ',' << p.z[k].imag();
      }
      out << '\n';
    }
  return out.str();
}

std::string heatmap_csv(const TorusChart& t, int n) {
  std::ostringstream out;
  out.precision(6);
  out << "theta,s,residual\n";
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double th = kTwoPi * i / n, s = kTwoPi * j / n;
      const AmbientJet p = t(th, s);
      out << th << ',' << s << ',' << std::abs(omega(p.value(), p.partial(0), p.partial(1))) << '\n';
    }
  return out.str();
}

struct Context {
  const RunConfig& cfg;
  VerificationReport& report;
  std::vector<PlotFile>& plots;

  void lagrangian(const TorusChart& c) {
    report.less("lagrangian " + c.label, lagrangian_residual(c, cfg.grid), kLagrangianTol, sq(cfg.grid),
                "jet pullback");
  }

  // Flux loops need about four nodes per Fourier mode of the curves involved.
  void path(const IsotopyPath& p, int degree = 0) {
    const int nodes = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max(512, 4 * degree))));
    const PathSummary s = check_path(p, cfg.time_samples, cfg.grid, nodes);
    const std::string grid = sq(cfg.grid) + ", " + std::to_string(cfg.time_samples) + " times";
    report.less("path " + p.label + ": lagrangian slices", s.max_lagrangian, kLagrangianTol, grid, "jet pullback");
    report.less("path " + p.label + ": flux theta", s.max_flux_theta, cfg.tol_flux, grid, "periodic quadrature");
    report.less("path " + p.label + ": flux s", s.max_flux_s, cfg.tol_flux, grid, "periodic quadrature");
  }

  void hausdorff(const std::string& name, const TorusChart& a, const TorusChart& b) {
    report.less(name, endpoint_match(a, b, cfg.hausdorff_grid), kHausdorffTol, sq(cfg.hausdorff_grid),
                "Gauss-Newton foot points");
  }

  void plot(const std::string& name, std::string csv) {
    if (cfg.plots) plots.push_back({name, std::move(csv)});
  }
};

IsotopyPath inflating_path(const PlaneCurve& base) {
  return {"area-inflating", Space::C2,
          [base](const Real& th, const Real& s, const Real& t) {
            const Cplx c = (1.0 + 0.1 * t) * base.eval(s);
            AmbientJet p;
            p.z = {c * cis(th), c * cis(-th), Cplx(0.0)};
            return p;
          },
          "negative control"};
}

DiscClass diagonal_disc(const PlaneCurve& c) {
  return {"diagonal disc over c", Space::C2,
          [c](const Real& lam, const Real& s) {
            const Cplx w = cone(c, lam, s);
            AmbientJet p;
            p.z = {w, w, Cplx(0.0)};
            return p;
          },
          theta_ep(c), Generator::S, 0.0};
}

DiscClass chekanov_disc(double r2) {
  const PlaneCurve w = f_of_circle(2.0 * r2);
  return {"disc over f(L)", Space::C2,
          [w](const Real& lam, const Real& s) {
            AmbientJet p;
            p.z = {cone(w, lam, s), Cplx(0.0), Cplx(0.0)};
            return p;
          },
          theta_ch(r2), Generator::S, 0.0};
}

DiscClass clifford_disc(Space space, double r2, int factor) {
  const double r = std::sqrt(r2);
  return {"factor disc " + std::to_string(factor), space,
          [=](const Real& lam, const Real& s) {
            const Cplx a = lam * r * cis(s), b = Cplx(r);
            const Cplx z0 = factor == 0 ? a : b, z1 = factor == 0 ? b : a;
            if (space == Space::CP2) return embed_E2(z0, z1);
            if (space == Space::S2xS2) return embed_E11(z0, z1);
            AmbientJet p;
            p.z = {z0, z1, Cplx(0.0)};
            return p;
          },
          clifford(Space::C2, r2), factor == 0 ? Generator::Theta : Generator::S, 0.0};
}

void monotonicity(Context& ctx, const std::string& name, const std::vector<DiscClass>& discs, double target) {
  const auto est = monotonicity_fit(discs, ctx.cfg.grid);
  const std::string grid = "32 x " + std::to_string(ctx.cfg.grid);
  ctx.report.near("monotonicity " + name + ": K_L", est.constant, target, kAreaTol, grid, "disc quadrature / winding");
  ctx.report.less("monotonicity " + name + ": spread", est.max_deviation, kAreaTol, grid, "disc quadrature / winding");
  int unstable = 0;
  for (const auto& e : est.entries) unstable += e.stable ? 0 : 1;
  ctx.report.less("monotonicity " + name + ": Maslov changes under doubling", unstable, 0.5,
                  std::to_string(ctx.cfg.grid) + " vs " + std::to_string(2 * ctx.cfg.grid), "winding");
  for (const auto& e : est.entries)
    ctx.report.near("monotonicity " + name + ": Maslov of " + e.label, e.maslov, 2.0, 0.5,
                    std::to_string(ctx.cfg.grid), "winding");
}

// f(L) sampled finely enough that its top Fourier modes are negligible.
PlaneCurve resolved_f_of_circle(double area, int n) {
  for (;; n *= 2) {
    const PlaneCurve c = f_of_circle(area, n);
    double top = 0.0, scale = 0.0;
    for (int k = -c.degree(); k <= c.degree(); ++k) {
      scale = std::max(scale, std::abs(c.coefficient(k)));
      if (4 * std::abs(k) >= n) top = std::max(top, std::abs(c.coefficient(k)));
    }
    if (top < 1e-15 * scale || n >= 8192) return c;
  }
}

PlaneCurve ep_target(double r2) { return PlaneCurve::circle(2.0 * std::sqrt(r2), std::sqrt(r2)); }

// ---------------------------------------------------------------------------

void run_sanity(Context& ctx) {
  auto& rep = ctx.report;
  const auto& cfg = ctx.cfg;
  rep.near("area of a CP2 line", projective_line_area(Space::CP2, 48), 2.0, 1e-8, "48x48", "quadrature");
  rep.near("area of CP1", projective_line_area(Space::CP1, 48), 1.0, 1e-8, "48x48", "quadrature");
  rep.near("area of a sphere factor of S2xS2", sphere_factor_area(48), 1.0, 1e-8, "48x48", "quadrature");
  for (double r : {0.3, 0.5, 1.0})
    rep.near("enclosed area of circle r=" + std::to_string(r).substr(0, 3), enclosed_area(PlaneCurve::circle(0.0, r)),
             r * r, 1e-10, "auto", "periodic quadrature");

  rep.less("conjugation identity", conjugation_identity_check(256), 1e-14, "256", "matrix arithmetic");
  for (const auto& spec : {rho_ep(), rho_ch(), rho_bc()}) {
    rep.less("group law " + spec.name, group_law_residual(spec, 64), 1e-12, "64x64", "matrix arithmetic");
    rep.less("generates " + spec.name + " (" + kHamiltonianSign + ")", check_generates(spec, 200, cfg.seed), 1e-10,
             "200 points", "jet differential");
  }
  const std::pair<Embedding, const char*> embeddings[] = {
      {Embedding::E2, "E2"}, {Embedding::E2Tilde, "E2~"}, {Embedding::E11, "E11"}, {Embedding::E1, "E1"}};
  for (const auto& [e, name] : embeddings)
    rep.less(std::string("symplectic embedding ") + name, embedding_defect(e, 1000, cfg.seed), 1e-9, "1000 points",
             "jet pullback");

  const auto gamma3 = make_gamma(GammaMode::CP2);
  const std::vector<TorusChart> tori = {clifford(Space::C2, 0.5),
                                        clifford(Space::CP2, 2.0 / 3.0),
                                        clifford(Space::S2xS2, 0.5),
                                        theta_ch(cfg.r2),
                                        theta_ep(ep_target(cfg.r2)),
                                        theta_ch_modified(ChekanovVariant::Plain, gamma3),
                                        theta_ch_modified(ChekanovVariant::P, gamma3),
                                        theta_ch_modified(ChekanovVariant::Prime, gamma3),
                                        theta_cs(GammaMode::CP2, gamma3),
                                        theta_cs(GammaMode::S2xS2),
                                        theta_bc(GammaMode::CP2),
                                        theta_bc(GammaMode::S2xS2)};
  for (const auto& t : tori) {
    ctx.lagrangian(t);
    rep.less("seam " + t.label, seam_mismatch(t, cfg.grid), 1e-12, std::to_string(cfg.grid), "evaluation");
    rep.greater("immersion " + t.label, immersion_margin(t, cfg.grid), 1e-8, sq(cfg.grid), "evaluation");
  }

  monotonicity(ctx, "Theta_EP", {diagonal_disc(ep_target(cfg.r2))}, cfg.r2);
  monotonicity(ctx, "Theta_Ch", {chekanov_disc(cfg.r2)}, cfg.r2);
  monotonicity(ctx, "Clifford CP2",
               {clifford_disc(Space::CP2, 2.0 / 3.0, 0), clifford_disc(Space::CP2, 2.0 / 3.0, 1)}, 1.0 / 3.0);
  monotonicity(ctx, "Clifford S2xS2", {clifford_disc(Space::S2xS2, 0.5, 0), clifford_disc(Space::S2xS2, 0.5, 1)},
               0.25);

  rep.greater("negative control: perturbed chart lagrangian",
              lagrangian_residual(perturbed(theta_ep(ep_target(cfg.r2)), 0.01), cfg.grid), 1e-4, sq(cfg.grid),
              "negative control");
  rep.greater("negative control: area-inflating path flux s",
              std::abs(flux(inflating_path(ep_target(cfg.r2)), Generator::S, 0.5, 512)), cfg.tol_flux, "512",
              "negative control");
  rep.greater("negative control: Clifford not fibered over the equator",
              fiber_checks_cp2(clifford(Space::CP2, 2.0 / 3.0), 32, 64).max_line_residual, 1e-2, "32x64",
              "negative control");
}

// ---------------------------------------------------------------------------

void run_c2_prop(Context& ctx) {
  auto& rep = ctx.report;
  const auto& cfg = ctx.cfg;
  const Mat3 P = matrix_P();
  rep.less("conjugation identity", conjugation_identity_check(256), 1e-14, "256", "matrix arithmetic");
  rep.less("P in SU(2)", unitary_defect(P, 2, true), 1e-14, "-", "matrix arithmetic");

  const TorusChart ch = theta_ch(cfg.r2);
  const TorusChart chP = transformed(ch, P, "P.Theta_Ch");
  const PlaneCurve lp = resolved_f_of_circle(2.0 * cfg.r2, cfg.curve_samples).transformed(Complex(0.5, 0.5), 0.0);
  const TorusChart ep_lp = theta_ep(lp, "Theta_EP(L^P)");
  rep.less("P.Theta_Ch = Theta_EP(L^P) pointwise (theta + pi/4)", pointwise_match(chP, ep_lp, cfg.grid, kPi / 4),
           kIdentityTol, sq(cfg.grid), "closed form");
  ctx.lagrangian(ch);
  ctx.lagrangian(chP);

  const PlaneCurve target = ep_target(cfg.r2);
  const TorusChart ep = theta_ep(target);
  ctx.lagrangian(ep);
  IsotopyConstraints opts;
  opts.avoid_origin = true;
  opts.curve_samples = cfg.curve_samples;
  opts.check_times = cfg.time_samples;
  const CurveIsotopy iso = curve_isotopy(lp, target, opts);
  rep.greater("curve isotopy L^P -> c: min |c_t|", iso.stats().min_modulus, 1e-6,
              std::to_string(cfg.time_samples) + " x 512", "sampling");
  rep.less("curve isotopy L^P -> c: area drift", iso.stats().max_area_drift, 1e-9,
           std::to_string(cfg.time_samples) + " times", "periodic quadrature");

  const IsotopyPath phi = ep_curve_path(iso, "Phi_t");
  ctx.path(phi, iso.start().degree());
  ctx.hausdorff("endpoint Phi_0 = P.Theta_Ch", phi.slice(0.0), chP);
  ctx.hausdorff("endpoint Phi_1 = Theta_EP(c)", phi.slice(1.0), ep);

  monotonicity(ctx, "Theta_EP(c)", {diagonal_disc(target)}, cfg.r2);
  rep.greater("negative control: area-inflating path flux s",
              std::abs(flux(inflating_path(target), Generator::S, 0.5, 512)), cfg.tol_flux, "512", "negative control");

  ctx.plot("curve_LP.csv", curve_csv(lp, 512));
  ctx.plot("curve_c.csv", curve_csv(target, 512));
  ctx.plot("torus_Theta_EP.csv", torus_csv(ep, cfg.grid));
  ctx.plot("heatmap_Phi_half.csv", heatmap_csv(phi.slice(0.5), cfg.grid));
}

// ---------------------------------------------------------------------------

void run_cp2_theorem(Context& ctx) {
  auto& rep = ctx.report;
  const auto& cfg = ctx.cfg;
  const PlaneCurve gamma = make_gamma(GammaMode::CP2);
  const TorusChart cs = theta_cs(GammaMode::CP2, gamma);
  const TorusChart plain = theta_ch_modified(ChekanovVariant::Plain, gamma);
  const TorusChart withP = theta_ch_modified(ChekanovVariant::P, gamma);
  const TorusChart prime = theta_ch_modified(ChekanovVariant::Prime, gamma);
  const TorusChart bc = theta_bc(GammaMode::CP2);

  rep.less("Theta_CS = R_{-pi/4} P Theta~_Ch pointwise",
           pointwise_match(cs, transformed(withP, matrix_R_minus_quarter(), "R.P.Theta~_Ch"), cfg.grid), kIdentityTol,
           sq(cfg.grid), "closed form");
  rep.less("P in SU(2)", unitary_defect(matrix_P(), 2, true), 1e-14, "-", "matrix arithmetic");
  rep.less("R_{-pi/4} in U(2)", unitary_defect(matrix_R_minus_quarter(), 2, false), 1e-14, "-", "matrix arithmetic");
  Mat3 phase = identity3();
  phase[2][2] = Complex(0.0, 1.0);
  rep.less("diag(1,1,i) in U(3)", unitary_defect(phase, 3, false), 1e-14, "-", "matrix arithmetic");
  for (const auto* t : {&cs, &plain, &withP, &prime, &bc}) ctx.lagrangian(*t);

  // Phase rotation of the last homogeneous coordinate.
  const IsotopyPath rot = matrix_path(
      plain,
      [](const Real& t) {
        Mat3J m{};
        m[0][0] = m[1][1] = Cplx(1.0);
        m[2][2] = cis((kPi / 2) * t);
        return m;
      },
      "phase rotation");
  ctx.path(rot);
  ctx.hausdorff("endpoint phase rotation = Theta~'_Ch", rot.slice(1.0), prime);

  // Geometry of the quadric and the fibers.
  rep.less("I(Z) on the quadric", quadric_membership(cfg.grid), 1e-12, sq(cfg.grid), "closed form");
  const double up = cylinder_half_area(1, 48), down = cylinder_half_area(-1, 48);
  rep.near("area of half-cylinder image tau > 0", up, 2.0, kAreaTol, "48x48", "quadrature (conic area 4)");
  rep.near("area of half-cylinder image tau < 0", down, 2.0, kAreaTol, "48x48", "quadrature (conic area 4)");
  rep.less("half-cylinder images have equal area", std::abs(up - down), kAreaTol, "48x48", "quadrature");
  rep.near("fiber half-disc area", fiber_half_disc_area(32), 1.0, kAreaTol, "32x32", "quadrature");
  {
    AmbientPoint e;
    e.space = Space::CP2;
    e.z = {1.0, 0.0, Complex(0.0, 1.0)};
    const auto c = normalize(fiber_disc_CP2(Real(0.0), Cplx(1.0 / kSqrt2)).value());
    const auto n = normalize(e);
    double d = 0.0;
    for (int k = 0; k < 3; ++k) d = std::max(d, std::abs(c.z[k] - n.z[k]));
    rep.less("fiber center is the equator point [1:0:i]", d, 1e-14, "-", "closed form");
  }

  const FiberCheck fp = fiber_checks_cp2(prime, 32, cfg.curve_samples);
  const std::string fgrid = "32 x " + std::to_string(cfg.curve_samples);
  rep.less("Theta~'_Ch slices on N_theta", fp.max_line_residual, 1e-10, fgrid, "closed form");
  rep.greater("Theta~'_Ch slices avoid RP2", fp.min_rp2_margin, 0.01, fgrid, "closed form");
  rep.near("Theta~'_Ch min fiber area", fp.min_area, 2.0 / 3.0, kAreaTol, fgrid, "cone quadrature");
  rep.near("Theta~'_Ch max fiber area", fp.max_area, 2.0 / 3.0, kAreaTol, fgrid, "cone quadrature");
  const FiberCheck fb = fiber_checks_cp2(bc, 32, cfg.curve_samples);
  rep.less("Theta_BC(CP2) slices on N_theta", fb.max_line_residual, 1e-10, fgrid, "closed form");
  rep.greater("Theta_BC(CP2) slices avoid RP2", fb.min_rp2_margin, 0.01, fgrid, "closed form");
  rep.near("Theta_BC(CP2) min fiber area", fb.min_area, 2.0 / 3.0, kAreaTol, fgrid, "cone quadrature");
  rep.near("Theta_BC(CP2) max fiber area", fb.max_area, 2.0 / 3.0, kAreaTol, fgrid, "cone quadrature");

  // Fiberwise isotopy extended by rho_Ch.
  IsotopyConstraints opts;
  opts.inside_half_disc = true;
  opts.curve_samples = cfg.curve_samples;
  opts.check_times = cfg.time_samples;
  const CurveIsotopy iso = curve_isotopy(gamma, bc_fiber_curve(), opts);
  rep.greater("fiber isotopy: min Re z", iso.stats().min_real, 0.0, std::to_string(cfg.time_samples) + " x 512",
              "sampling");
  rep.greater("fiber isotopy: 1 - max |z|", 1.0 - iso.stats().max_modulus, 0.0,
              std::to_string(cfg.time_samples) + " x 512", "sampling");
  rep.less("fiber isotopy: area drift", iso.stats().max_area_drift, 1e-9, std::to_string(cfg.time_samples) + " times",
           "periodic quadrature");
  const IsotopyPath fib = fiber_curve_path(iso, "fiberwise");
  ctx.path(fib, iso.start().degree());
  ctx.hausdorff("endpoint fiberwise_0 = Theta~'_Ch", fib.slice(0.0), prime);
  ctx.hausdorff("endpoint fiberwise_1 = Theta_BC(CP2)", fib.slice(1.0), bc);

  rep.greater("negative control: Clifford not fibered over the equator",
              fiber_checks_cp2(clifford(Space::CP2, 2.0 / 3.0), 32, 64).max_line_residual, 1e-2, "32x64",
              "negative control");

  ctx.plot("curve_gamma.csv", curve_csv(gamma, 512));
  ctx.plot("curve_bc_fiber.csv", curve_csv(bc_fiber_curve(), 512));
  ctx.plot("torus_Theta_CS.csv", torus_csv(cs, cfg.grid));
  ctx.plot("torus_Theta_prime_Ch.csv", torus_csv(prime, cfg.grid));
  ctx.plot("torus_Theta_BC.csv", torus_csv(bc, cfg.grid));
  ctx.plot("heatmap_Theta_CS.csv", heatmap_csv(cs, cfg.grid));
  ctx.plot("heatmap_Theta_prime_Ch.csv", heatmap_csv(prime, cfg.grid));
  ctx.plot("heatmap_Theta_BC.csv", heatmap_csv(bc, cfg.grid));
}

// ---------------------------------------------------------------------------

// sin of the largest principal angle between span(a0, a1) and span(b0, b1),
// bounded by the Frobenius norm of the rejection.
double plane_gap(std::array<std::array<double, 6>, 2> a, std::array<std::array<double, 6>, 2> b) {
  const auto dot = [](const std::array<double, 6>& u, const std::array<double, 6>& v) {
    double s = 0.0;
    for (int k = 0; k < 6; ++k) s += u[k] * v[k];
    return s;
  };
  const auto orthonormalize = [&](std::array<std::array<double, 6>, 2>& m) {
    const double n0 = std::sqrt(dot(m[0], m[0]));
    for (auto& x : m[0]) x /= n0;
    const double p = dot(m[0], m[1]);
    for (int k = 0; k < 6; ++k) m[1][k] -= p * m[0][k];
    const double n1 = std::sqrt(dot(m[1], m[1]));
    for (auto& x : m[1]) x /= n1;
  };
  orthonormalize(a);
  orthonormalize(b);
  double f = 0.0;
  for (const auto& v : a) {
    auto r = v;
    for (const auto& w : b) {
      const double p = dot(v, w);
      for (int k = 0; k < 6; ++k) r[k] -= p * w[k];
    }
    f += dot(r, r);
  }
  return std::sqrt(f);
}

IsotopyPath second_factor_rotation(const TorusChart& chart) {
  const auto inner = chart.map;
  return {"second-factor rotation", Space::S2xS2,
          [inner](const Real& th, const Real& s, const Real& t) {
            AmbientJet p = inner(th, s);
            const Real a = kPi * t, c = cos(a), sn = sin(a);
            const Real y1 = p.x[4], y2 = p.x[5];
            p.x[4] = c * y1 - sn * y2;
            p.x[5] = sn * y1 + c * y2;
            return p;
          },
          "rotation about the x axis of the second factor"};
}

void run_s2s2_theorem(Context& ctx) {
  auto& rep = ctx.report;
  const auto& cfg = ctx.cfg;
  const PlaneCurve gamma = make_gamma(GammaMode::S2xS2);
  double gmax = 0.0;
  for (const Complex z : gamma.samples(4096)) gmax = std::max(gmax, std::abs(z));
  rep.greater("Theta_CS inside B(1) x B(1): 1 - max |gamma|", 1.0 - gmax, 0.0, "4096", "sampling");
  const TorusChart cs = theta_cs(GammaMode::S2xS2, gamma);
  ctx.lagrangian(cs);

  // Q and its transport.
  const auto [q, qt] = surfaces_Q();
  const Mat3 RP = matrix_R_minus_quarter() * matrix_P();
  double qid = 0.0, qinv = 0.0;
  for (int i = 0; i < cfg.grid; ++i)
    for (int j = 0; j < cfg.grid; ++j) {
      const double th = kTwoPi * i / cfg.grid, tau = -0.9 + 1.8 * j / (cfg.grid - 1);
      const auto z = chekanov_map_I(tau, th, 0.0, 0.0);
      AmbientPoint a;
      a.z = {z[0], z[1], 0.0};
      const auto b = apply_matrix(RP, a);
      const auto c = q(th, tau).value();
      qid = std::max({qid, std::abs(b.z[0] - c.z[0]), std::abs(b.z[1] - c.z[1])});
      const auto moved = act(rho_ep(), 0.3 + tau, c);
      const auto there = q(th + 0.3 + tau, tau).value();
      qinv = std::max({qinv, std::abs(moved.z[0] - there.z[0]), std::abs(moved.z[1] - there.z[1])});
    }
  rep.less("Q = R_{-pi/4} P I(Z) pointwise", qid, 1e-12, sq(cfg.grid), "closed form");
  rep.less("Q invariant under rho_EP", qinv, 1e-12, sq(cfg.grid), "closed form");

  const Mat3 P2 = matrix_P2();
  double conj = 0.0;
  for (int k = 0; k < 256; ++k) {
    const double t = kTwoPi * k / 256;
    conj = std::max(conj, distance(P2 * value(rho_bc().matrix(Real(-t))) * P2, value(rho_bc().matrix(Real(t)))));
  }
  rep.less("P2 conjugates the inverse rotation to rho_BC", conj, 1e-14, "256", "matrix arithmetic");
  rep.less("P2 in SO(3)", unitary_defect(P2, 3, true), 1e-14, "-", "matrix arithmetic");

  double eq = 0.0, tangency = 0.0;
  for (int i = 0; i < cfg.grid; ++i) {
    const AmbientJet p = qt(kTwoPi * i / cfg.grid, 0.0);
    std::array<double, 3> x{p.x[0].v, p.x[1].v, p.x[2].v};
    for (int k = 0; k < 3; ++k) eq = std::max(eq, std::abs(p.x[k].v - p.x[3 + k].v));
    eq = std::max(eq, std::abs(p.x[2].v));
    // Diagonal tangent plane {(v, v) : v orthogonal to x}.
    const double nx = std::sqrt(x[0] * x[0] + x[1] * x[1] + x[2] * x[2]);
    for (auto& c : x) c /= nx;
    std::array<double, 3> e1{x[1], -x[0], 0.0};
    const double n1 = std::sqrt(e1[0] * e1[0] + e1[1] * e1[1]);
    for (auto& c : e1) c /= n1;
    const std::array<double, 3> e2{x[1] * e1[2] - x[2] * e1[1], x[2] * e1[0] - x[0] * e1[2],
                                   x[0] * e1[1] - x[1] * e1[0]};
    std::array<std::array<double, 6>, 2> a{}, b{};
    for (int k = 0; k < 6; ++k) {
      a[0][k] = p.x[k].d[0];
      a[1][k] = p.x[k].d[1];
    }
    for (int k = 0; k < 3; ++k) {
      b[0][k] = b[0][3 + k] = e1[k];
      b[1][k] = b[1][3 + k] = e2[k];
    }
    tangency = std::max(tangency, plane_gap(a, b));
  }
  rep.less("Q~ at tau = 0 is the diagonal equator", eq, 1e-10, std::to_string(cfg.grid), "closed form");
  rep.less("Q~ tangent to the diagonal at tau = 0 (sin principal angle)", tangency, 1e-8, std::to_string(cfg.grid),
           "jet tangents");

  // Transport: rotate the second factor by pi about the x axis.
  const TorusChart T = transported_torus(gamma, "transported torus");
  const IsotopyPath rot = second_factor_rotation(cs);
  ctx.path(rot);
  rep.less("endpoint second-factor rotation = transported torus pointwise", pointwise_match(rot.slice(1.0), T, cfg.grid),
           kIdentityTol, sq(cfg.grid), "closed form");
  ctx.lagrangian(T);

  double anti = std::numeric_limits<double>::infinity();
  for (int i = 0; i < cfg.grid; ++i)
    for (int j = 0; j < cfg.grid; ++j) {
      const AmbientPoint p = T(kTwoPi * i / cfg.grid, kTwoPi * j / cfg.grid).value();
      double s = 0.0;
      for (int k = 0; k < 3; ++k) s += (p.x[k] + p.x[3 + k]) * (p.x[k] + p.x[3 + k]);
      anti = std::min(anti, std::sqrt(s));
    }
  rep.greater("transported torus avoids the antidiagonal", anti, 1e-3, sq(cfg.grid), "sampling");
  const double action = disc_area(
      [&](const Real& lam, const Real& s) { return antidiagonal_fiber_map(cone(gamma, lam, s)); }, 32,
      cfg.curve_samples);
  rep.near("transported fiber-slice action", action, 0.5, kAreaTol, "32 x " + std::to_string(cfg.curve_samples),
           "cone quadrature");
  rep.less("transported torus invariant under rho_BC", rho_invariance(T, rho_bc(), 32), 1e-12, "32x32",
           "closed form");

  const TorusChart K = theta_bc(GammaMode::S2xS2);
  double kc = 0.0;
  for (int i = 0; i < cfg.grid; ++i)
    for (int j = 0; j < cfg.grid; ++j) {
      const auto r = k_constraints(K(kTwoPi * i / cfg.grid, kTwoPi * j / cfg.grid).value());
      kc = std::max({kc, r[0], r[1]});
    }
  rep.less("K constraints x3 + y3 = 0, x.y = -1/8", kc, 1e-10, sq(cfg.grid), "closed form");
  rep.less("Theta_BC(S2xS2) invariant under rho_BC", rho_invariance(K, rho_bc(), 32), 1e-12, "32x32", "closed form");
  ctx.lagrangian(K);

  IsotopyConstraints opts;
  opts.inside_half_disc = true;
  opts.curve_samples = cfg.curve_samples;
  opts.check_times = cfg.time_samples;
  const PlaneCurve kappa = k_curve();
  const CurveIsotopy iso = curve_isotopy(gamma, kappa, opts);
  rep.less("connecting curve isotopy: area drift", iso.stats().max_area_drift, 1e-9,
           std::to_string(cfg.time_samples) + " times", "periodic quadrature");
  const IsotopyPath conn = transported_curve_path(iso, "rho_BC-invariant family");
  ctx.path(conn, iso.start().degree());
  ctx.hausdorff("endpoint family_0 = transported torus", conn.slice(0.0), T);
  ctx.hausdorff("endpoint family_1 = Theta_BC(S2xS2)", conn.slice(1.0), K);

  ctx.plot("curve_gamma.csv", curve_csv(gamma, 512));
  ctx.plot("curve_kappa.csv", curve_csv(kappa, 512));
  ctx.plot("torus_Theta_CS.csv", torus_csv(cs, cfg.grid));
  ctx.plot("torus_transported.csv", torus_csv(T, cfg.grid));
  ctx.plot("torus_Theta_BC.csv", torus_csv(K, cfg.grid));
  ctx.plot("heatmap_Theta_BC.csv", heatmap_csv(K, cfg.grid));
}

}  // namespace

const std::vector<std::string>& scenario_names() {
  static const std::vector<std::string> names = {"sanity", "c2-prop", "cp2-theorem", "s2s2-theorem"};
  return names;
}

void validate(const RunConfig& cfg) {
  bool known = false;
  for (const auto& n : scenario_names()) known = known || n == cfg.scenario;
  if (!known) {
    std::string list;
    for (const auto& n : scenario_names()) list += (list.empty() ? "" : ", ") + n;
    throw PreconditionError("unknown scenario '" + cfg.scenario + "' (available: " + list + ")");
  }
  if (!(cfg.r2 > 0.0) || !std::isfinite(cfg.r2)) throw PreconditionError("r2 must be a positive number");
  if (!power_of_two_at_least_32(cfg.grid)) throw PreconditionError("grid must be a power of two >= 32");
  if (!power_of_two_at_least_32(cfg.curve_samples))
    throw PreconditionError("curve samples must be a power of two >= 32");
  if (!power_of_two_at_least_32(cfg.hausdorff_grid))
    throw PreconditionError("Hausdorff grid must be a power of two >= 32");
  if (cfg.time_samples < 2) throw PreconditionError("time samples must be >= 2");
  if (!(cfg.tol_flux > 0.0)) throw PreconditionError("flux tolerance must be positive");
}

PipelineResult run_stage_pipeline(const RunConfig& cfg) {
  validate(cfg);
  PipelineResult out{VerificationReport(cfg.scenario), {}};
  Context ctx{cfg, out.report, out.plots};
  try {
    if (cfg.scenario == "sanity") run_sanity(ctx);
    if (cfg.scenario == "c2-prop") run_c2_prop(ctx);
    if (cfg.scenario == "cp2-theorem") run_cp2_theorem(ctx);
    if (cfg.scenario == "s2s2-theorem") run_s2s2_theorem(ctx);
  } catch (const std::exception& e) {
    out.report.abort(e.what());
  }
  return out;
}

}  // namespace exotori
