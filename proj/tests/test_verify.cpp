#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "exotori/verify.hpp"

using namespace exotori;
using C = std::complex<double>;

namespace {

// Brute-force Maslov oracle: accumulated phase of det^2 on a fine loop.
double det2_turns(const TorusChart& chart, Generator g, double at, int n) {
  double total = 0.0, prev = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double u = kTwoPi * k / n;
    const auto p = g == Generator::Theta ? chart(u, at) : chart(at, u);
    const C d = p.z[0].partial(0) * p.z[1].partial(1) - p.z[0].partial(1) * p.z[1].partial(0);
    const double cur = std::arg(d * d);
    if (k > 0) {
      double step = cur - prev;
      while (step > kPi) step -= kTwoPi;
      while (step <= -kPi) step += kTwoPi;
      total += step;
    }
    prev = cur;
  }
  return total / kTwoPi;
}

DiscClass ep_diagonal_disc(const PlaneCurve& c) {
  return {"diagonal disc", Space::C2,
          [c](const Real& lam, const Real& s) {
            const Cplx w = cone(c, lam, s);
            AmbientJet p;
            p.z = {w, w, Cplx(0.0)};
            return p;
          },
          theta_ep(c), Generator::S, 0.0};
}

DiscClass factor_disc(Space space, double r2, int factor) {
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

}  // namespace

TEST_CASE("Lagrangian residual and negative control") {
  CHECK(lagrangian_residual(clifford(Space::C2, 0.5), 64) < 1e-12);
  const auto ep = theta_ep(PlaneCurve::circle(1.0, 0.5));
  CHECK(lagrangian_residual(ep, 64) < 1e-9);
  CHECK(lagrangian_residual(perturbed(ep, 0.01), 64) > 1e-4);
  CHECK(seam_mismatch(ep, 64) < 1e-12);
  CHECK(immersion_margin(ep, 64) > 1e-8);
}

TEST_CASE("Maslov indices") {
  const auto cl = clifford(Space::C2, 0.5);
  CHECK(maslov_index(cl, Generator::Theta, 0.0, 64) == 2);
  CHECK(std::abs(det2_turns(cl, Generator::Theta, 0.0, 1000) - 2.0) < 1e-9);
  const auto ch = theta_ch(0.25);
  const int m = maslov_index(ch, Generator::S, 0.0, 64);
  CHECK(m == maslov_index(ch, Generator::S, 0.0, 128));
  CHECK(m == 2);
  CHECK(std::lround(det2_turns(ch, Generator::S, 0.0, 4000)) == m);
  const auto ep = theta_ep(PlaneCurve::circle(1.0, 0.5));
  CHECK(maslov_index(ep, Generator::S, 0.0, 64) == 2);
  CHECK(maslov_index(ep, Generator::Theta, 0.0, 64) == 0);
}

TEST_CASE("monotonicity fits") {
  const auto ep = monotonicity_fit({ep_diagonal_disc(PlaneCurve::circle(1.0, 0.5))}, 64);
  REQUIRE(ep.entries.size() == 1);
  CHECK(std::abs(ep.entries[0].area - 0.5) < 1e-12);
  CHECK(ep.entries[0].maslov == 2);
  CHECK(std::abs(ep.constant - 0.25) < 1e-6);

  const auto cp = monotonicity_fit({factor_disc(Space::CP2, 2.0 / 3.0, 0), factor_disc(Space::CP2, 2.0 / 3.0, 1)}, 64);
  CHECK(std::abs(cp.constant - 1.0 / 3.0) < 1e-8);
  CHECK(cp.max_deviation < 1e-8);
  const auto ss =
      monotonicity_fit({factor_disc(Space::S2xS2, 0.5, 0), factor_disc(Space::S2xS2, 0.5, 1)}, 64);
  CHECK(std::abs(ss.constant - 0.25) < 1e-8);
  for (const auto& e : ss.entries) CHECK(e.stable);
}

TEST_CASE("flux of curve-induced paths") {
  const double r2 = 0.25;
  const auto lp = f_of_circle(2 * r2).transformed(C(0.5, 0.5), 0.0);
  const auto iso = curve_isotopy(lp, PlaneCurve::circle(1.0, 0.5), {.avoid_origin = true});
  const auto path = ep_curve_path(iso, "Phi");
  const auto sum = check_path(path, 9, 64);
  CHECK(sum.max_lagrangian < 1e-8);
  CHECK(sum.max_flux_theta < 1e-10);
  CHECK(sum.max_flux_s < 1e-8);

  // Constant path.
  const auto still = matrix_path(theta_ep(PlaneCurve::circle(1.0, 0.5)),
                                 [](const Real&) {
                                   Mat3J m{};
                                   for (int i = 0; i < 3; ++i) m[i][i] = Cplx(1.0);
                                   return m;
                                 },
                                 "still");
  CHECK(std::abs(flux(still, Generator::S, 0.5, 64)) < 1e-15);

  // Area-inflating path: s-flux equals the derivative of the disc area 2 * area(c_t).
  const auto base = PlaneCurve::circle(1.0, 0.5);
  const IsotopyPath inflating{"inflate", Space::C2,
                              [base](const Real& th, const Real& s, const Real& t) {
                                const Cplx c = (1.0 + 0.1 * t) * base.eval(s);
                                AmbientJet p;
                                p.z = {c * cis(th), c * cis(-th), Cplx(0.0)};
                                return p;
                              },
                              "negative control"};
  const double t = 0.5;
  const double expected = 2.0 * enclosed_area(base) * 2.0 * 0.1 * (1.0 + 0.1 * t);
  CHECK(std::abs(std::abs(flux(inflating, Generator::S, t, 64)) - expected) < 1e-12);
}

TEST_CASE("endpoint matching") {
  const auto ep = theta_ep(PlaneCurve::circle(1.0, 0.5));
  CHECK(endpoint_match(ep, ep, 32) < 1e-12);
  const IsotopyPath shifted{"shift", Space::C2,
                            [](const Real& th, const Real& s, const Real&) {
                              const Cplx c = PlaneCurve::circle(1.0, 0.5).eval(s + 0.37);
                              AmbientJet p;
                              p.z = {c * cis(th + 1.1), c * cis(-th - 1.1), Cplx(0.0)};
                              return p;
                            },
                            ""};
  CHECK(endpoint_match(ep, shifted.slice(0.0), 128) < 1e-6);
  CHECK(endpoint_match(ep, theta_ep(PlaneCurve::circle(1.0, 0.45)), 32) > 0.04);

  const auto gamma = make_gamma(GammaMode::CP2);
  const auto cs = theta_cs(GammaMode::CP2, gamma);
  const auto rp = transformed(theta_ch_modified(ChekanovVariant::P, gamma), matrix_R_minus_quarter(), "RP");
  CHECK(pointwise_match(cs, rp, 64) < 1e-10);
  CHECK(endpoint_match(cs, rp, 32) < 1e-10);
}

TEST_CASE("fiber checks in CP2") {
  const auto prime = theta_ch_modified(ChekanovVariant::Prime, make_gamma(GammaMode::CP2));
  const auto f = fiber_checks_cp2(prime, 32, 256);
  CHECK(f.in_fibers);
  CHECK(f.max_line_residual < 1e-10);
  CHECK(f.min_rp2_margin > 0.01);
  CHECK(std::abs(f.min_area - 2.0 / 3.0) < 1e-6);
  CHECK(std::abs(f.max_area - 2.0 / 3.0) < 1e-6);
  const auto bc = fiber_checks_cp2(theta_bc(GammaMode::CP2), 32, 256);
  CHECK(std::abs(bc.min_area - 2.0 / 3.0) < 1e-6);
  CHECK(std::abs(bc.max_area - 2.0 / 3.0) < 1e-6);
  const auto cl = fiber_checks_cp2(clifford(Space::CP2, 2.0 / 3.0), 32, 64);
  CHECK_FALSE(cl.in_fibers);
  CHECK(cl.max_line_residual > 0.1);
}
