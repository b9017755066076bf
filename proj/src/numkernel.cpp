#include "exotori/numkernel.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace exotori {

namespace {
// Steps near pi are indistinguishable from aliasing; demand a margin.
constexpr double kMaxPhaseStep = 0.75 * kPi;
}  // namespace

PeriodicGrid::PeriodicGrid(int n) : n_(n) {
  if (n <= 0) throw PreconditionError("PeriodicGrid: sample count must be positive");
}

std::vector<double> PeriodicGrid::nodes() const {
  std::vector<double> out(n_);
  for (int k = 0; k < n_; ++k) out[k] = node(k);
  return out;
}

double integrate_periodic(const std::function<double(double)>& f, const PeriodicGrid& grid) {
  double sum = 0.0;
  for (int k = 0; k < grid.size(); ++k) {
    const double t = grid.node(k);
    const double v = f(t);
    if (!std::isfinite(v)) {
      std::ostringstream msg;
      msg << "integrate_periodic: non-finite integrand at node " << k << " (t = " << t << ")";
      throw EvaluationError(msg.str());
    }
    sum += v;
  }
  return sum * grid.spacing();
}

WindingResult winding_number(const std::function<std::complex<double>(double)>& z,
                             const PeriodicGrid& grid, double min_modulus) {
  const int n = grid.size();
  WindingResult out;
  std::complex<double> first = z(grid.node(0));
  std::complex<double> prev = first;
  double total = 0.0;
  for (int k = 1; k <= n; ++k) {
    const std::complex<double> cur = (k == n) ? first : z(grid.node(k));
    if (std::abs(cur) < min_modulus) throw EvaluationError("winding undefined: |z| below threshold");
    // Phase increment of cur relative to prev, in (-pi, pi].
    const double step = std::arg(cur * std::conj(prev));
    if (std::abs(step) >= kMaxPhaseStep) throw EvaluationError("grid too coarse: adjacent phase jump too large");
    out.max_jump = std::max(out.max_jump, std::abs(step));
    total += step;
    prev = cur;
  }
  if (std::abs(first) < min_modulus) throw EvaluationError("winding undefined: |z| below threshold");
  const double turns = total / kTwoPi;
  out.winding = static_cast<int>(std::lround(turns));
  out.residual = std::abs(turns - out.winding);
  return out;
}

double bisect(const std::function<double(double)>& f, double lo, double hi, double tol) {
  double flo = f(lo);
  const double fhi = f(hi);
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if (flo * fhi > 0.0) throw PreconditionError("bisect: no sign change on bracket");
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if (std::abs(fm) <= tol || 0.5 * (hi - lo) <= tol) return mid;
    if ((fm < 0.0) == (flo < 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

QuadratureRule gauss_legendre(int n, double a, double b) {
  if (n <= 0) throw PreconditionError("gauss_legendre: need n > 0");
  QuadratureRule rule;
  rule.nodes.resize(n);
  rule.weights.resize(n);
  // Newton on P_n from the Chebyshev-like initial guess.
  for (int i = 0; i < (n + 1) / 2; ++i) {
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double dp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = x;
      for (int k = 2; k <= n; ++k) {
        const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
      }
      dp = n * (x * p1 - p0) / (x * x - 1.0);
      const double dx = p1 / dp;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    const double half = 0.5 * (b - a), mid = 0.5 * (b + a);
    rule.nodes[i] = mid - half * x;
    rule.nodes[n - 1 - i] = mid + half * x;
    rule.weights[i] = rule.weights[n - 1 - i] = w * half;
  }
  return rule;
}

}  // namespace exotori
