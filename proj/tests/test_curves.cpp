#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "exotori/curves.hpp"

using namespace exotori;
using C = std::complex<double>;

namespace {

// Shoelace oracle on a dense polygon, normalized by pi.
double shoelace(const PlaneCurve& c, int n = 20000) {
  const auto p = c.samples(n);
  double a = 0.0;
  for (int j = 0; j < n; ++j) {
    const C u = p[j], v = p[(j + 1) % n];
    a += u.real() * v.imag() - u.imag() * v.real();
  }
  return a / (2.0 * kPi);
}

}  // namespace

TEST_CASE("enclosed area examples") {
  CHECK(enclosed_area(PlaneCurve::circle(0.0, 0.5)) == doctest::Approx(0.25).epsilon(1e-15));
  const auto ellipse = PlaneCurve::from_function(
      [](double s) { return C(0.3 * std::cos(s), 0.6 * std::sin(s)); }, 64, 8);
  CHECK(std::abs(enclosed_area(ellipse) - 0.18) < 1e-14);
  CHECK(std::abs(shoelace(ellipse) - 0.18) < 1e-6);
  CHECK(ellipse.orientation() == 1);
  CHECK(PlaneCurve::from_function([](double s) { return std::polar(1.0, -s); }, 32, 4).orientation() == -1);
}

TEST_CASE("open curves are rejected") {
  CHECK_THROWS_AS(PlaneCurve::from_function([](double s) { return C(s, 0.0); }, 32, 4), ContractViolation);
}

TEST_CASE("jet evaluation carries the tangent") {
  const auto c = make_gamma(GammaMode::CP2);
  const Real s = Real::variable(1.3, 1);
  const Cplx v = c.eval(s);
  CHECK(std::abs(v.value() - c(1.3)) < 1e-15);
  CHECK(std::abs(v.partial(1) - c.derivative(1.3)) < 1e-14);
  const double h = 1e-6;
  CHECK(std::abs((c(1.3 + h) - c(1.3 - h)) / (2 * h) - c.derivative(1.3)) < 1e-7);
}

TEST_CASE("embeddedness") {
  CHECK(is_embedded(PlaneCurve::circle(0.3, 0.2)));
  // Limacon with an inner loop.
  const auto lim = PlaneCurve::from_coefficients({0.0, 0.0, 0.5, 0.0, 1.0});
  CHECK_FALSE(is_embedded(lim));
}

TEST_CASE("make_gamma targets") {
  for (const GammaMode m : {GammaMode::CP2, GammaMode::S2xS2}) {
    const auto g = make_gamma(m);
    const double a = gamma_target_area(m);
    CHECK(std::abs(enclosed_area(g) - a) < 1e-12);
    CHECK(std::abs(shoelace(g) - a) < 1e-6);
    CHECK(is_embedded(g, 1024));
    for (const C z : g.samples(4096)) {
      CHECK(z.real() >= kGammaMargin - 1e-12);
      CHECK(std::abs(z) <= 1.0 - kGammaMargin + 1e-12);
    }
  }
  const auto g = make_gamma(0.25);
  const auto h = make_gamma(0.25);
  CHECK(g.coefficients() == h.coefficients());
  CHECK(enclosed_area(g.scaled(0.9, C(0.45))) == doctest::Approx(0.81 * 0.25).epsilon(1e-12));
  CHECK_THROWS_AS(make_gamma(0.49), ConstructionError);
  CHECK_THROWS_AS(make_gamma(0.6), PreconditionError);
}

TEST_CASE("exact symplectomorphism f") {
  // Jacobian determinant 1 everywhere.
  double worst = 0.0;
  for (double x = -1.0; x <= 1.0; x += 0.25)
    for (double y = -1.0; y <= 1.0; y += 0.25) {
      const Cplx w = exact_symplecto_f(Real::variable(x, 0), Real::variable(y, 1));
      const double det = w.re.d[0] * w.im.d[1] - w.re.d[1] * w.im.d[0];
      worst = std::max(worst, std::abs(det - 1.0));
    }
  CHECK(worst < 1e-12);
  const auto img = f_of_circle(0.16, 256);
  CHECK(std::abs(enclosed_area(img) - 0.16) < 1e-12);
  CHECK(std::abs(shoelace(img) - 0.16) < 1e-6);
}

TEST_CASE("arclength alignment") {
  const auto c = PlaneCurve::circle(C(0.2, 0.1), 0.4, 2.0);
  const auto a = arclength_aligned(c, 64);
  CHECK(std::abs(a(0.0) - C(0.6, 0.1)) < 1e-12);
  CHECK(std::abs(a.coefficient(1) - 0.4) < 1e-12);
  // Constant speed after alignment.
  const auto g = arclength_aligned(make_gamma(GammaMode::S2xS2), 256);
  const double v0 = std::abs(g.derivative(0.0));
  for (int j = 0; j < 64; ++j) CHECK(std::abs(std::abs(g.derivative(kTwoPi * j / 64)) - v0) < 1e-6 * v0);
}

TEST_CASE("curve isotopy: identical and reparametrized curves") {
  const auto c = PlaneCurve::circle(C(1.0), 0.5);
  const auto iso = curve_isotopy(c, PlaneCurve::circle(C(1.0), 0.5, 1.7), {.avoid_origin = true});
  CHECK(iso.stats().max_area_drift < 1e-12);
  const Cplx v = iso.eval(Real::variable(0.4, 1), Real::variable(0.5, 2));
  CHECK(std::abs(v.partial(2)) < 1e-10);
}

TEST_CASE("curve isotopy from f(L) to a round circle avoids the origin") {
  const double r2 = 0.25;
  const auto lp = f_of_circle(2 * r2).transformed(C(0.5, 0.5), 0.0);
  const auto target = PlaneCurve::circle(C(1.0), 0.5);
  REQUIRE(std::abs(enclosed_area(lp) - enclosed_area(target)) < 1e-12);
  const auto iso = curve_isotopy(lp, target, {.avoid_origin = true});
  CHECK(iso.stats().min_modulus > 0.05);
  CHECK(iso.stats().max_area_drift < 1e-9);
  // Exact area along the path via jets.
  for (double t : {0.1, 0.37, 0.8}) CHECK(std::abs(enclosed_area(iso.at(t)) - 0.25) < 1e-12);
  // Endpoints coincide setwise with the inputs.
  CHECK(std::abs(iso.at(1.0)(0.0) - C(1.5)) < 1e-10);
}

TEST_CASE("half-disc boundary encloses area one half") {
  const auto boundary = PlaneCurve::from_function(
      [](double s) {
        // Semicircle for s in [0, pi], diameter back down for s in [pi, 2 pi].
        if (s <= kPi) return std::polar(1.0, s - kPi / 2);
        return C(0.0, 1.0 - 2.0 * (s - kPi) / kPi);
      },
      8192, 4095);
  CHECK(std::abs(enclosed_area(boundary) - 0.5) < 1e-6);
}

TEST_CASE("curve isotopy inside the half-disc") {
  const double a = 0.2;
  const auto iso = curve_isotopy(make_gamma(a), PlaneCurve::circle(C(0.5), std::sqrt(a)), {.inside_half_disc = true});
  CHECK(iso.stats().max_area_drift < 1e-9);
  CHECK(iso.stats().min_real > 0.0);
  CHECK(iso.stats().max_modulus < 1.0);
}

TEST_CASE("curve isotopy rejects mismatched areas and origin-enclosing curves") {
  CHECK_THROWS_AS(curve_isotopy(PlaneCurve::circle(0.0, 0.5), PlaneCurve::circle(0.0, 0.6), {}), PreconditionError);
  CHECK_THROWS_AS(curve_isotopy(PlaneCurve::circle(0.0, 0.5), PlaneCurve::circle(2.0, 0.5), {.avoid_origin = true}),
                  PreconditionError);
}
