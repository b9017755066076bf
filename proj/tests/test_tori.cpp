#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "exotori/tori.hpp"

using namespace exotori;
using C = std::complex<double>;

namespace {

double lagrangian(const TorusChart& c, int n = 64) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto p = c(kTwoPi * i / n, kTwoPi * j / n);
      worst = std::max(worst, std::abs(omega(p.value(), p.partial(0), p.partial(1))));
    }
  return worst;
}

// Distance between projective points on unit representatives, phase removed.
double projective_gap(const AmbientPoint& a, const AmbientPoint& b) {
  const auto na = normalize(a), nb = normalize(b);
  double d = 0.0;
  for (int k = 0; k < 3; ++k) d = std::max(d, std::abs(na.z[k] - nb.z[k]));
  return d;
}

double max_gap(const TorusChart& a, const TorusChart& b, double dtheta = 0.0, int n = 64) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double th = kTwoPi * i / n, s = kTwoPi * j / n;
      const auto p = a(th, s).value(), q = b(th + dtheta, s).value();
      if (a.space == Space::CP2) {
        worst = std::max(worst, projective_gap(p, q));
      } else {
        for (int k = 0; k < 3; ++k) worst = std::max(worst, std::abs(p.z[k] - q.z[k]));
        for (int k = 0; k < 6; ++k) worst = std::max(worst, std::abs(p.x[k] - q.x[k]));
      }
    }
  return worst;
}

}  // namespace

TEST_CASE("Chekanov map examples and symplectic pullback") {
  const auto a = chekanov_map_I(0.0, 0.0, 0.0, 0.0);
  CHECK(std::abs(a[0] - 1.0) < 1e-15);
  CHECK(std::abs(a[1]) < 1e-15);
  const auto b = chekanov_map_I(1.0, kPi / 2, 0.0, 0.0);
  CHECK(std::abs(b[0] - C(0, -1)) < 1e-15);
  CHECK(std::abs(b[1] - 1.0) < 1e-15);

  // I^* omega = (1/pi)(d theta ^ d tau + dx ^ dy): canonical dq ^ dp with q = (theta, x), p = (tau, y).
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 100; ++k) {
    const double tau = u(rng), th = 3 * u(rng), y = u(rng), x = u(rng);
    std::array<Real, 4> v{Real(tau), Real(th), Real(y), Real(x)};
    for (int i = 0; i < 4; ++i)
      for (int j = i + 1; j < 4; ++j) {
        auto w = v;
        w[i].d[0] = 1.0;
        w[j].d[1] = 1.0;
        const auto z = chekanov_map_I(w[0], w[1], w[2], w[3]);
        AmbientJet p;
        p.z = {z[0], z[1], Cplx(0.0)};
        const double got = omega(p.value(), p.partial(0), p.partial(1));
        double expect = 0.0;
        if (i == 0 && j == 1) expect = -1.0 / kPi;  // (d tau, d theta)
        if (i == 2 && j == 3) expect = -1.0 / kPi;  // (dy, dx)
        worst = std::max(worst, std::abs(got - expect));
      }
  }
  CHECK(worst < 1e-10);
}

TEST_CASE("circle actions") {
  AmbientPoint p;
  p.z = {C(0.3, 0.1), C(-0.7, 0.2), 0.0};
  const auto q = act(rho_ep(), kPi, p);
  CHECK(std::abs(q.z[0] + p.z[0]) < 1e-15);
  CHECK(std::abs(q.z[1] + p.z[1]) < 1e-15);
  for (const auto& spec : {rho_ep(), rho_ch(), rho_bc()}) {
    CHECK(group_law_residual(spec, 64) < 1e-12);
    CHECK(check_generates(spec, 200) < 1e-10);
  }
  AmbientPoint s;
  s.space = Space::S2xS2;
  CHECK_THROWS_AS(act(rho_ep(), 0.1, s), PreconditionError);
}

TEST_CASE("conjugation identity") {
  CHECK(conjugation_identity_check(256) < 1e-14);
  const Mat3 P = matrix_P();
  const Mat3 lhs = adjoint(P) * value(rho_ep().matrix(Real(kPi / 2))) * P;
  Mat3 expect = identity3();
  expect[0][0] = expect[1][1] = 0.0;
  expect[0][1] = -1.0;
  expect[1][0] = 1.0;
  CHECK(distance(lhs, expect) < 1e-15);
}

TEST_CASE("theta_ch") {
  const auto t = theta_ch(0.25);
  const auto p = t(0.0, 0.0).value();
  CHECK(std::abs(p.z[0] - std::exp(std::sqrt(0.5))) < 1e-14);
  CHECK(std::abs(p.z[1]) < 1e-15);
  CHECK(lagrangian(t) < 1e-9);
  const auto big = theta_ch(2.0 / 3.0)(0.0, 0.0).value();
  CHECK(std::norm(big.z[0]) + std::norm(big.z[1]) > 2.0);
  CHECK_THROWS_AS(theta_ch(-1.0), PreconditionError);
}

TEST_CASE("theta_ep") {
  const auto c = PlaneCurve::circle(1.0, 0.5);
  const auto t = theta_ep(c);
  CHECK(lagrangian(t) < 1e-9);
  double worst = 0.0;
  for (int i = 0; i < 16; ++i) {
    const double th = 0.3 * i, s = 0.7 * i, a = 1.1;
    const auto moved = act(rho_ep(), a, t(th, s).value());
    const auto there = t(th + a, s).value();
    worst = std::max({worst, std::abs(moved.z[0] - there.z[0]), std::abs(moved.z[1] - there.z[1])});
  }
  CHECK(worst < 1e-12);
  const auto g = theta_ep(make_gamma(GammaMode::CP2));
  double m = 0.0;
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      const auto p = g(kTwoPi * i / 32, kTwoPi * j / 32).value();
      m = std::max(m, std::norm(p.z[0]) + std::norm(p.z[1]));
    }
  CHECK(m < 2.0);
  CHECK_THROWS_AS(theta_ep(PlaneCurve::circle(0.5, 0.5)), PreconditionError);
}

TEST_CASE("Clifford tori are Lagrangian") {
  CHECK(lagrangian(clifford(Space::C2, 0.5)) < 1e-12);
  CHECK(lagrangian(clifford(Space::CP2, 2.0 / 3.0)) < 1e-12);
  CHECK(lagrangian(clifford(Space::S2xS2, 0.5)) < 1e-12);
}

TEST_CASE("theta_cs both modes") {
  const auto cp = theta_cs(GammaMode::CP2);
  const auto ss = theta_cs(GammaMode::S2xS2);
  CHECK(lagrangian(cp) < 1e-8);
  CHECK(lagrangian(ss) < 1e-8);
  CHECK_THROWS_AS(theta_cs(GammaMode::CP2, make_gamma(GammaMode::S2xS2)), PreconditionError);
  for (const C z : make_gamma(GammaMode::S2xS2).samples(512)) CHECK(std::abs(z) < 1.0);
  const auto p = normalize(cp(0.4, 1.0).value());
  CHECK(std::abs(std::norm(p.z[0]) + std::norm(p.z[1]) + std::norm(p.z[2]) - 1.0) < 1e-14);
}

TEST_CASE("modified Chekanov tori") {
  const auto gamma = make_gamma(GammaMode::CP2);
  const auto plain = theta_ch_modified(ChekanovVariant::Plain, gamma);
  const auto withP = theta_ch_modified(ChekanovVariant::P, gamma);
  const auto prime = theta_ch_modified(ChekanovVariant::Prime, gamma);
  const auto cs = theta_cs(GammaMode::CP2, gamma);
  CHECK(max_gap(cs, transformed(withP, matrix_R_minus_quarter(), "R P Theta")) < 1e-10);
  Mat3 phase = identity3();
  phase[2][2] = C(0, 1);
  CHECK(max_gap(prime, transformed(plain, phase, "i plain"), kPi / 4) < 1e-10);
  const auto p0 = prime(0.0, 1.2).value();
  const C g = gamma(1.2);
  CHECK(std::abs(p0.z[0] - std::sqrt(2.0) * g) < 1e-15);
  CHECK(std::abs(p0.z[1]) < 1e-15);
  CHECK(std::abs(p0.z[2] - C(0, std::sqrt(2 - 2 * std::norm(g)))) < 1e-15);
  CHECK(lagrangian(plain) < 1e-8);
  CHECK(lagrangian(withP) < 1e-8);
  CHECK(lagrangian(prime) < 1e-8);
}

TEST_CASE("cylinder image on the quadric") {
  const auto c = cylinder_image_IZ();
  const auto p = c(0.0, 0.0).value();
  CHECK(std::abs(p.z[0] - 1.0) < 1e-15);
  CHECK(std::abs(p.z[2] - C(0, 1)) < 1e-15);
  CHECK(quadric_membership(64) < 1e-12);
  for (double th : {0.0, 1.0, 4.0}) {
    for (int sign : {1, -1}) {
      AmbientPoint limit;
      limit.space = Space::CP2;
      limit.z = {1.0, C(0, sign), 0.0};
      const auto q = normalize(c(th, sign * 0.999).value());
      const auto l = normalize(limit);
      const double overlap = std::abs(q.z[0] * std::conj(l.z[0]) + q.z[1] * std::conj(l.z[1]) +
                                      q.z[2] * std::conj(l.z[2]));
      CHECK(std::acos(std::min(1.0, overlap)) < 0.05);
    }
  }
  // Each half has Fubini-Study area 2: the quadric is a conic of degree 2.
  CHECK(std::abs(cylinder_half_area(1, 48) - 2.0) < 1e-8);
  CHECK(std::abs(cylinder_half_area(-1, 48) - 2.0) < 1e-8);
}

TEST_CASE("fiber discs in CP2") {
  const auto c = fiber_disc_CP2(Real(0.0), Cplx(1.0 / std::sqrt(2.0))).value();
  AmbientPoint e;
  e.space = Space::CP2;
  e.z = {1.0, 0.0, C(0, 1)};
  CHECK(projective_gap(c, e) < 1e-15);
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(0.0, 1.0);
  double worst = 0.0, inv = 0.0;
  for (int k = 0; k < 200; ++k) {
    const double th = kTwoPi * u(rng);
    const C z = std::polar(std::sqrt(u(rng)) * 0.999, kPi * (u(rng) - 0.5));
    const auto p = fiber_disc_CP2(Real(th), Cplx(z)).value();
    worst = std::max(worst, fiber_line_residual(th, p));
    AmbientPoint scaled = p;
    for (auto& x : scaled.z) x *= C(0.3, -1.7);
    inv = std::max(inv, std::abs(fiber_coordinate(th, scaled) - z));
  }
  CHECK(worst < 1e-12);
  CHECK(inv < 1e-12);
  CHECK(std::abs(fiber_half_disc_area(32) - 1.0) < 1e-10);
  // N_0 meets the quadric at [1 : 0 : i] and [1 : 0 : -i], a conjugate pair.
  const C a(0, 1), b = std::conj(a);
  CHECK(std::abs(1.0 + a * a) < 1e-15);
  CHECK(std::abs(1.0 + b * b) < 1e-15);
}

TEST_CASE("theta_bc in CP2") {
  const auto zc = bc_fiber_curve();
  CHECK(std::abs(enclosed_area(zc) - 1.0 / 3.0) < 1e-12);
  CHECK(std::abs(zc(0.0) - zc(kPi)) > 0.1);
  const auto t = theta_bc(GammaMode::CP2);
  CHECK(lagrangian(t) < 1e-8);
}

TEST_CASE("K curve and theta_bc in S2xS2") {
  const auto k = k_curve();
  CHECK(std::abs(enclosed_area(k) - 0.25) < 1e-12);
  const auto t = theta_bc(GammaMode::S2xS2);
  double worst = 0.0;
  for (int i = 0; i < 64; ++i)
    for (int j = 0; j < 64; ++j) {
      const auto r = k_constraints(t(kTwoPi * i / 64, kTwoPi * j / 64).value());
      worst = std::max({worst, r[0], r[1]});
    }
  CHECK(worst < 1e-10);
  CHECK(lagrangian(t) < 1e-8);
}

TEST_CASE("surfaces Q and Q~") {
  const auto [q, qt] = surfaces_Q();
  const auto iz = cylinder_image_IZ();
  const Mat3 M = matrix_R_minus_quarter() * matrix_P();
  double worst = 0.0, inv = 0.0;
  for (int i = 0; i < 32; ++i)
    for (int j = 0; j < 32; ++j) {
      const double th = kTwoPi * i / 32, tau = -0.9 + 1.8 * j / 31;
      // I on the zero section of Z, in C2: (cos - i tau sin, sin + i tau cos).
      const auto z = chekanov_map_I(tau, th, 0.0, 0.0);
      AmbientPoint a;
      a.z = {z[0], z[1], 0.0};
      const auto b = apply_matrix(M, a);
      const auto c = q(th, tau).value();
      worst = std::max({worst, std::abs(b.z[0] - c.z[0]), std::abs(b.z[1] - c.z[1])});
      const auto moved = act(rho_ep(), 0.8, c);
      const auto there = q(th + 0.8, tau).value();
      inv = std::max({inv, std::abs(moved.z[0] - there.z[0]), std::abs(moved.z[1] - there.z[1])});
    }
  CHECK(worst < 1e-12);
  CHECK(inv < 1e-12);

  const auto p = qt(0.7, 0.0);
  const double phi = 0.7 + kPi / 4;
  const std::array<double, 3> eq{0.5 * std::cos(phi), 0.5 * std::sin(phi), 0.0};
  for (int k = 0; k < 3; ++k) {
    CHECK(std::abs(p.x[k].v - eq[k]) < 1e-15);
    CHECK(std::abs(p.x[3 + k].v - eq[k]) < 1e-15);
  }
  const auto d = p.partial(1);
  const std::array<double, 6> expect{0, 0, 1, 0, 0, 1};
  const double h = 1e-6;
  const auto fp = qt(0.7, h).value(), fm = qt(0.7, -h).value();
  for (int k = 0; k < 6; ++k) {
    CHECK(std::abs(d.x[k] - expect[k]) < 1e-14);
    CHECK(std::abs((fp.x[k] - fm.x[k]) / (2 * h) - expect[k]) < 1e-8);
  }
}
