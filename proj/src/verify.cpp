#include "exotori/verify.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

namespace exotori {

namespace {

// Flat coordinates: R^4 for C2, the projector Z Z^* for CP2 (real and
// imaginary parts of its nine entries), R^6 for S2xS2.
std::vector<Real> flat(const AmbientJet& p) {
  std::vector<Real> out;
  switch (p.space) {
    case Space::C2:
      for (int k = 0; k < 2; ++k) out.insert(out.end(), {p.z[k].re, p.z[k].im});
      break;
    case Space::CP2: {
      Real n2(0.0);
      for (const auto& z : p.z) n2 += norm(z);
      const Real inv = 1.0 / sqrt(n2);
      std::array<Cplx, 3> u;
      for (int k = 0; k < 3; ++k) u[k] = p.z[k] * inv;
      for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
          const Cplx e = u[i] * conj(u[j]);
          out.insert(out.end(), {e.re, e.im});
        }
      break;
    }
    case Space::S2xS2:
      out.assign(p.x.begin(), p.x.end());
      break;
    default:
      throw ContractViolation("flat coordinates: unsupported space");
  }
  return out;
}

double ambient_distance(Space space, double flat_gap) {
  // |pi_a - pi_b|_F = sqrt2 sin(d_FS).
  if (space == Space::CP2) return std::asin(std::min(1.0, flat_gap / std::sqrt(2.0)));
  return flat_gap;
}

double gap(const std::vector<Real>& a, const std::vector<Real>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) s += (a[k].v - b[k].v) * (a[k].v - b[k].v);
  return std::sqrt(s);
}

std::pair<double, double> loop_point(Generator g, double u, double at) {
  return g == Generator::Theta ? std::make_pair(u, at) : std::make_pair(at, u);
}

std::size_t seed_of(Generator g) { return g == Generator::Theta ? 0 : 1; }

}  // namespace

std::string_view to_string(Generator g) { return g == Generator::Theta ? "theta" : "s"; }

double lagrangian_residual(const TorusChart& chart, int n) {
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const AmbientJet p = chart(kTwoPi * i / n, kTwoPi * j / n);
      worst = std::max(worst, std::abs(omega(p.value(), p.partial(0), p.partial(1))));
    }
  return worst;
}

double immersion_margin(const TorusChart& chart, int n) {
  double least = std::numeric_limits<double>::infinity();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const auto f = flat(chart(kTwoPi * i / n, kTwoPi * j / n));
      double aa = 0, bb = 0, ab = 0;
      for (const Real& x : f) {
        aa += x.d[0] * x.d[0];
        bb += x.d[1] * x.d[1];
        ab += x.d[0] * x.d[1];
      }
      least = std::min(least, std::sqrt(std::max(0.0, aa * bb - ab * ab)));
    }
  return least;
}

double seam_mismatch(const TorusChart& chart, int n) {
  double worst = 0.0;
  for (int k = 0; k < n; ++k) {
    const double u = kTwoPi * k / n;
    worst = std::max(worst, gap(flat(chart(0.0, u)), flat(chart(kTwoPi, u))));
    worst = std::max(worst, gap(flat(chart(u, 0.0)), flat(chart(u, kTwoPi))));
  }
  return worst;
}

TorusChart perturbed(const TorusChart& chart, double eps) {
  if (chart.space != Space::C2) throw ContractViolation("perturbed: C2 charts only");
  const auto inner = chart.map;
  return {chart.label + "+perturbation", Space::C2, [inner, eps](const Real& th, const Real& s) {
            AmbientJet p = inner(th, s);
            p.z[0].re += eps * sin(s);
            return p;
          }};
}

int maslov_index(const TorusChart& chart, Generator loop, double at, int n) {
  if (chart.space != Space::C2) throw ContractViolation("maslov_index: chart must be in C2");
  const auto det2 = [&](double u) {
    const auto [th, s] = loop_point(loop, u, at);
    const AmbientJet p = chart(th, s);
    const Complex d = p.z[0].partial(0) * p.z[1].partial(1) - p.z[0].partial(1) * p.z[1].partial(0);
    return d * d;
  };
  try {
    return winding_number(det2, PeriodicGrid(n), 1e-14).winding;
  } catch (const EvaluationError& e) {
    if (std::string(e.what()).find("undefined") != std::string::npos)
      throw EvaluationError("maslov_index: frame degenerate");
    throw;
  }
}

Cplx cone(const PlaneCurve& c, const Real& lambda, const Real& s) {
  const Cplx m(c.coefficient(0));
  return m + lambda * (c.eval(s) - m);
}

double disc_area(const std::function<AmbientJet(const Real&, const Real&)>& disc, int n_lambda, int n_s) {
  const auto rule = gauss_legendre(n_lambda, 0.0, 1.0);
  double total = 0.0;
  for (std::size_t k = 0; k < rule.nodes.size(); ++k) {
    const Real lam = Real::variable(rule.nodes[k], 0);
    total += rule.weights[k] * integrate_periodic(
                                   [&](double s) {
                                     const AmbientJet p = disc(lam, Real::variable(s, 1));
                                     return omega(p.value(), p.partial(0), p.partial(1));
                                   },
                                   PeriodicGrid(n_s));
  }
  return total;
}

MonotonicityEstimate monotonicity_fit(const std::vector<DiscClass>& discs, int n) {
  MonotonicityEstimate est;
  std::vector<double> ratios;
  for (const auto& d : discs) {
    MonotonicityEstimate::Entry e;
    e.label = d.label;
    e.area = disc_area(d.disc, 32, n);
    e.maslov = maslov_index(d.darboux, d.loop, d.at, n);
    e.stable = maslov_index(d.darboux, d.loop, d.at, 2 * n) == e.maslov;
    est.entries.push_back(e);
    if (e.maslov == 0) {
      if (std::abs(e.area) > 1e-9) throw EvaluationError("monotonicity_fit: non-monotone witness " + d.label);
      continue;
    }
    ratios.push_back(e.area / e.maslov);
  }
  if (ratios.empty()) throw EvaluationError("monotonicity_fit: no disc with nonzero Maslov index");
  double sum = 0.0;
  for (double r : ratios) sum += r;
  est.constant = sum / ratios.size();
  for (double r : ratios) est.max_deviation = std::max(est.max_deviation, std::abs(r - est.constant));
  return est;
}

TorusChart IsotopyPath::slice(double t) const {
  const auto m = map;
  return {label + "@t", space, [m, t](const Real& th, const Real& s) { return m(th, s, Real(t)); }};
}

double flux(const IsotopyPath& path, Generator g, double t, int n, double at) {
  const std::size_t seed = seed_of(g);
  return integrate_periodic(
      [&](double u) {
        const auto [th, s] = loop_point(g, u, at);
        const AmbientJet p = path.map(Real::variable(th, 0), Real::variable(s, 1), Real::variable(t, 2));
        return omega(p.value(), p.partial(2), p.partial(seed));
      },
      PeriodicGrid(n));
}

PathSummary check_path(const IsotopyPath& path, int times, int n, int flux_nodes) {
  PathSummary out;
  out.times = times;
  for (int i = 0; i < times; ++i) {
    const double t = times > 1 ? static_cast<double>(i) / (times - 1) : 0.0;
    out.max_lagrangian = std::max(out.max_lagrangian, lagrangian_residual(path.slice(t), n));
    out.max_flux_theta = std::max(out.max_flux_theta, std::abs(flux(path, Generator::Theta, t, flux_nodes)));
    out.max_flux_s = std::max(out.max_flux_s, std::abs(flux(path, Generator::S, t, flux_nodes)));
  }
  return out;
}

IsotopyPath ep_curve_path(const CurveIsotopy& iso, std::string label) {
  return {std::move(label), Space::C2,
          [iso](const Real& th, const Real& s, const Real& t) {
            const Cplx c = iso.eval(s, t);
            AmbientJet p;
            p.z = {c * cis(th), c * cis(-th), Cplx(0.0)};
            return p;
          },
          "curve isotopy extended by rho_EP"};
}

IsotopyPath fiber_curve_path(const CurveIsotopy& iso, std::string label) {
  return {std::move(label), Space::CP2,
          [iso](const Real& th, const Real& s, const Real& t) { return fiber_disc_CP2(th, iso.eval(s, t)); },
          "fiber curve isotopy extended by rho_Ch"};
}

IsotopyPath transported_curve_path(const CurveIsotopy& iso, std::string label) {
  const auto spec = rho_bc();
  return {std::move(label), Space::S2xS2,
          [iso, spec](const Real& th, const Real& s, const Real& t) {
            return apply_matrix(spec.matrix(th), antidiagonal_fiber_map(iso.eval(s, t)));
          },
          "curve isotopy in the antidiagonal fiber extended by rho_BC"};
}

IsotopyPath matrix_path(const TorusChart& chart, std::function<Mat3J(const Real& t)> m, std::string label) {
  const auto inner = chart.map;
  return {std::move(label), chart.space,
          [inner, m](const Real& th, const Real& s, const Real& t) { return apply_matrix(m(t), inner(th, s)); },
          "global linear path"};
}

namespace {

constexpr double kMaxStep = 0.25;
// A warm-started foot point this close is taken as the nearest one; anything
// farther triggers the global coarse search.
constexpr double kAcceptWarm = 1e-8;

// Distance from a target point to chart b, refining (theta, s) in place.
double gauss_newton(const TorusChart& b, const std::vector<Real>& target, double& th, double& s) {
  double dist = 0.0;
  for (int it = 0; it < 60; ++it) {
    const auto f = flat(b(th, s));
    double jj00 = 0, jj01 = 0, jj11 = 0, g0 = 0, g1 = 0, r2 = 0;
    for (std::size_t k = 0; k < f.size(); ++k) {
      const double r = f[k].v - target[k].v;
      r2 += r * r;
      jj00 += f[k].d[0] * f[k].d[0];
      jj01 += f[k].d[0] * f[k].d[1];
      jj11 += f[k].d[1] * f[k].d[1];
      g0 += f[k].d[0] * r;
      g1 += f[k].d[1] * r;
    }
    dist = std::sqrt(r2);
    const double det = jj00 * jj11 - jj01 * jj01;
    if (!(std::abs(det) > 0.0)) break;
    double d0 = -(jj11 * g0 - jj01 * g1) / det, d1 = -(jj00 * g1 - jj01 * g0) / det;
    // Crude trust region: long steps jump to unrelated sheets of the torus.
    const double len = std::hypot(d0, d1);
    if (len > kMaxStep) d0 *= kMaxStep / len, d1 *= kMaxStep / len;
    th += d0;
    s += d1;
    if (std::abs(d0) + std::abs(d1) < 1e-12) break;
  }
  return std::min(dist, gap(flat(b(th, s)), target));
}

double one_sided(const TorusChart& a, const TorusChart& b, int n) {
  constexpr int coarse = 64;
  constexpr std::size_t kSeeds = 3;
  std::vector<std::vector<Real>> grid;
  grid.reserve(coarse * coarse);
  for (int i = 0; i < coarse; ++i)
    for (int j = 0; j < coarse; ++j) grid.push_back(flat(b(kTwoPi * i / coarse, kTwoPi * j / coarse)));

  double worst = 0.0;
  double row_th = 0.0, row_s = 0.0;
  bool have_row = false;
  for (int i = 0; i < n; ++i) {
    double th = row_th, s = row_s;
    bool warm = have_row;
    for (int j = 0; j < n; ++j) {
      const auto target = flat(a(kTwoPi * i / n, kTwoPi * j / n));
      double d = std::numeric_limits<double>::infinity();
      if (warm) {
        double t0 = th, s0 = s;
        d = gauss_newton(b, target, t0, s0);
        if (d < kAcceptWarm) th = t0, s = s0;
      }
      if (!(d < kAcceptWarm)) {
        // Seed from the few nearest coarse samples.
        std::array<std::pair<double, std::size_t>, kSeeds> best;
        best.fill({std::numeric_limits<double>::infinity(), 0});
        for (std::size_t k = 0; k < grid.size(); ++k) {
          const double g = gap(grid[k], target);
          if (g < best.back().first) {
            best.back() = {g, k};
            std::sort(best.begin(), best.end());
          }
        }
        for (const auto& [g, k] : best) {
          double t0 = kTwoPi * static_cast<double>(k / coarse) / coarse;
          double s0 = kTwoPi * static_cast<double>(k % coarse) / coarse;
          const double dn = gauss_newton(b, target, t0, s0);
          if (dn < d) d = dn, th = t0, s = s0;
        }
      }
      warm = true;
      if (j == 0) row_th = th, row_s = s, have_row = true;
      worst = std::max(worst, d);
    }
  }
  return worst;
}

}  // namespace

double endpoint_match(const TorusChart& a, const TorusChart& b, int n) {
  if (a.space != b.space) throw PreconditionError("endpoint_match: space mismatch");
  return ambient_distance(a.space, std::max(one_sided(a, b, n), one_sided(b, a, n)));
}

double pointwise_match(const TorusChart& a, const TorusChart& b, int n, double dtheta) {
  if (a.space != b.space) throw PreconditionError("pointwise_match: space mismatch");
  double worst = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      const double th = kTwoPi * i / n, s = kTwoPi * j / n;
      worst = std::max(worst, gap(flat(a(th, s)), flat(b(th + dtheta, s))));
    }
  return ambient_distance(a.space, worst);
}

FiberCheck fiber_checks_cp2(const TorusChart& chart, int n_theta, int n_s) {
  if (chart.space != Space::CP2) throw PreconditionError("fiber_checks_cp2: chart must be in CP2");
  FiberCheck out;
  out.min_rp2_margin = std::numeric_limits<double>::infinity();
  std::vector<std::vector<Complex>> slices(n_theta);
  for (int k = 0; k < n_theta; ++k) {
    const double th = kTwoPi * k / n_theta;
    for (int j = 0; j < n_s; ++j) {
      const AmbientPoint p = chart(th, kTwoPi * j / n_s).value();
      out.max_line_residual = std::max(out.max_line_residual, fiber_line_residual(th, p));
      out.min_rp2_margin = std::min(out.min_rp2_margin, rp2_distance(normalize(p).z));
      slices[k].push_back(p.z[2] == 0.0 ? Complex(1.0) : fiber_coordinate(th, p));
    }
  }
  out.in_fibers = out.max_line_residual < 1e-8;
  if (!out.in_fibers) {
    out.min_area = out.max_area = std::numeric_limits<double>::quiet_NaN();
    return out;
  }
  out.min_area = std::numeric_limits<double>::infinity();
  out.max_area = -out.min_area;
  for (int k = 0; k < n_theta; ++k) {
    const double th = kTwoPi * k / n_theta;
    const PlaneCurve c = PlaneCurve::from_samples(slices[k], n_s / 2 - 1);
    const double a = std::abs(disc_area(
        [&](const Real& lam, const Real& s) { return fiber_disc_CP2(Real(th), cone(c, lam, s)); }, 24, n_s));
    out.min_area = std::min(out.min_area, a);
    out.max_area = std::max(out.max_area, a);
  }
  return out;
}

}  // namespace exotori
