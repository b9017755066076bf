#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "exotori/numkernel.hpp"

using namespace exotori;

namespace {

// Independent oracle: accumulate unwrapped phase on a fine grid.
double brute_force_turns(const std::function<std::complex<double>(double)>& z, int n) {
  double total = 0.0;
  double prev = std::arg(z(0.0));
  for (int k = 1; k <= n; ++k) {
    const double cur = std::arg(z(kTwoPi * k / n));
    double d = cur - prev;
    while (d > kPi) d -= kTwoPi;
    while (d <= -kPi) d += kTwoPi;
    total += d;
    prev = cur;
  }
  return total / kTwoPi;
}

}  // namespace

TEST_CASE("periodic grid nodes are exactly 2 pi k / n") {
  PeriodicGrid g(8);
  for (int k = 0; k < 8; ++k) CHECK(g.node(k) == kTwoPi * k / 8);
  CHECK_THROWS_AS(PeriodicGrid(0), PreconditionError);
}

TEST_CASE("integrate_periodic examples") {
  CHECK(integrate_periodic([](double) { return 1.0; }, PeriodicGrid(16)) ==
        doctest::Approx(kTwoPi).epsilon(1e-15));
  CHECK(integrate_periodic([](double t) { return std::cos(t) * std::cos(t); }, PeriodicGrid(64)) ==
        doctest::Approx(kPi).epsilon(1e-15));
  const auto f = [](double t) { return std::exp(std::sin(t)); };
  const double a = integrate_periodic(f, PeriodicGrid(32));
  const double b = integrate_periodic(f, PeriodicGrid(64));
  CHECK(std::abs(a - b) < 1e-12);
}

TEST_CASE("integrate_periodic is exact on trigonometric polynomials of degree < n/2") {
  std::mt19937_64 rng(11);
  std::normal_distribution<double> g;
  for (int trial = 0; trial < 20; ++trial) {
    const double a0 = g(rng);
    std::array<double, 7> ca{}, sa{};
    for (int k = 0; k < 7; ++k) ca[k] = g(rng), sa[k] = g(rng);
    const auto f = [&](double t) {
      double v = a0;
      for (int k = 0; k < 7; ++k) v += ca[k] * std::cos((k + 1) * t) + sa[k] * std::sin((k + 1) * t);
      return v;
    };
    CHECK(std::abs(integrate_periodic(f, PeriodicGrid(16)) - kTwoPi * a0) < 1e-13);
  }
}

TEST_CASE("integrate_periodic names the offending node") {
  try {
    integrate_periodic([](double t) { return t > 3.0 ? std::nan("") : 1.0; }, PeriodicGrid(8));
    FAIL("expected EvaluationError");
  } catch (const EvaluationError& e) {
    CHECK(std::string(e.what()).find("node 4") != std::string::npos);
  }
}

TEST_CASE("winding_number examples") {
  using C = std::complex<double>;
  const auto two = [](double t) { return std::exp(C(0, 2 * t)); };
  const auto off = [](double t) { return 3.0 + std::exp(C(0, t)); };
  const auto mod = [](double t) { return std::exp(C(0, 2 * t)) * (2.0 + std::cos(t)); };
  CHECK(winding_number(two, PeriodicGrid(64)).winding == 2);
  CHECK(winding_number(off, PeriodicGrid(64)).winding == 0);
  const auto w = winding_number(mod, PeriodicGrid(64));
  CHECK(w.winding == 2);
  CHECK(w.residual < 1e-12);
  CHECK(std::lround(brute_force_turns(mod, 256)) == 2);
  CHECK(std::abs(brute_force_turns(mod, 256) - 2.0) < 1e-12);
}

TEST_CASE("winding_number is invariant under grid refinement") {
  using C = std::complex<double>;
  const auto z = [](double t) { return std::exp(C(0, -3 * t)) * (1.5 + std::sin(2 * t)) + 0.2; };
  const int w = winding_number(z, PeriodicGrid(64)).winding;
  for (int n : {128, 256, 1024}) CHECK(winding_number(z, PeriodicGrid(n)).winding == w);
  CHECK(w == -3);
}

TEST_CASE("winding_number error paths") {
  using C = std::complex<double>;
  CHECK_THROWS_WITH_AS(winding_number([](double t) { return std::exp(C(0, 7 * t)); }, PeriodicGrid(16)),
                       doctest::Contains("grid too coarse"), EvaluationError);
  CHECK_THROWS_WITH_AS(winding_number([](double t) { return std::exp(C(0, t)) - 1.0; }, PeriodicGrid(16)),
                       doctest::Contains("winding undefined"), EvaluationError);
}

TEST_CASE("bisect examples") {
  CHECK(bisect([](double x) { return x - 1.0; }, 0.0, 2.0, 1e-14) == doctest::Approx(1.0));
  const double r = bisect([](double x) { return x * x - 2.0; }, 1.0, 2.0, 1e-13);
  CHECK(std::abs(r * r - 2.0) <= 1e-12);
  CHECK(std::abs(r - 1.41421356237) < 1e-10);
  CHECK_THROWS_AS(bisect([](double x) { return x * x + 1.0; }, -1.0, 1.0, 1e-12), PreconditionError);
}

TEST_CASE("gauss_legendre integrates polynomials of degree 2n-1 exactly") {
  const auto rule = gauss_legendre(6, -0.5, 2.0);
  double s = 0.0;
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) s += rule.weights[i] * std::pow(rule.nodes[i], 11);
  const double exact = (std::pow(2.0, 12) - std::pow(-0.5, 12)) / 12.0;
  CHECK(s == doctest::Approx(exact).epsilon(1e-14));
}
