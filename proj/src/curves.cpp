#include "exotori/curves.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace exotori {

namespace {

Cplx lift(Complex value, Complex slope, const Real& s) {
  Cplx r(Real(value.real()), Real(value.imag()));
  for (std::size_t i = 0; i < kSeeds; ++i) {
    r.re.d[i] = slope.real() * s.d[i];
    r.im.d[i] = slope.imag() * s.d[i];
  }
  return r;
}

// sum_k c_k (ik)^order e^{iks}
Complex fourier_eval(const std::vector<Complex>& coeffs, double s, int order) {
  const int K = static_cast<int>(coeffs.size() / 2);
  const Complex w = std::polar(1.0, s);
  Complex power = std::pow(std::conj(w), K);
  Complex sum = 0.0;
  for (int k = -K; k <= K; ++k) {
    Complex term = coeffs[k + K] * power;
    for (int o = 0; o < order; ++o) term *= Complex(0.0, k);
    sum += term;
    power *= w;
  }
  return sum;
}

// In-place radix-2 forward transform, sum_j x_j e^{-2 pi i jk/n}.
void fft(std::vector<Complex>& a) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const std::size_t half = len / 2;
    for (std::size_t k = 0; k < half; ++k) {
      const Complex w = std::polar(1.0, -kTwoPi * static_cast<double>(k) / static_cast<double>(len));
      for (std::size_t i = 0; i < n; i += len) {
        const Complex u = a[i + k], v = a[i + k + half] * w;
        a[i + k] = u + v;
        a[i + k + half] = u - v;
      }
    }
  }
}

// DFT of real or complex samples, truncated to |k| <= K.
std::vector<Complex> dft(std::span<const Complex> samples, int K) {
  const int n = static_cast<int>(samples.size());
  std::vector<Complex> out(2 * K + 1);
  if (n > 0 && (n & (n - 1)) == 0 && 2 * K < n) {
    std::vector<Complex> a(samples.begin(), samples.end());
    fft(a);
    for (int k = -K; k <= K; ++k) out[k + K] = a[(k + n) % n] / static_cast<double>(n);
    return out;
  }
  for (int k = -K; k <= K; ++k) {
    Complex acc = 0.0;
    const Complex step = std::polar(1.0, -kTwoPi * k / n);
    Complex w = 1.0;
    for (int j = 0; j < n; ++j) {
      acc += samples[j] * w;
      w *= step;
      if ((j & 63) == 63) w = std::polar(1.0, -kTwoPi * k * (j + 1) / n);
    }
    out[k + K] = acc / static_cast<double>(n);
  }
  return out;
}

int auto_nodes(int degree) {
  int n = 256;
  while (n <= 4 * (degree + 1)) n *= 2;
  return n;
}

bool segments_cross(Complex a, Complex b, Complex c, Complex d) {
  const auto cross = [](Complex u, Complex v) { return u.real() * v.imag() - u.imag() * v.real(); };
  const double d1 = cross(b - a, c - a), d2 = cross(b - a, d - a);
  const double d3 = cross(d - c, a - c), d4 = cross(d - c, b - c);
  return ((d1 > 0) != (d2 > 0)) && ((d3 > 0) != (d4 > 0)) && d1 != 0 && d2 != 0 && d3 != 0 && d4 != 0;
}

}  // namespace

PlaneCurve PlaneCurve::from_coefficients(std::vector<Complex> coeffs) {
  if (coeffs.size() % 2 != 1) throw PreconditionError("PlaneCurve: coefficient count must be odd");
  PlaneCurve c;
  c.coeffs_ = std::move(coeffs);
  return c;
}

PlaneCurve PlaneCurve::from_samples(std::span<const Complex> samples, int max_degree) {
  const int n = static_cast<int>(samples.size());
  if (n < 3) throw PreconditionError("PlaneCurve: need at least three samples");
  const int K = std::min(max_degree, (n - 1) / 2);
  return from_coefficients(dft(samples, K));
}

PlaneCurve PlaneCurve::from_function(const std::function<Complex(double)>& f, int n, int max_degree) {
  const double gap = std::abs(f(0.0) - f(kTwoPi));
  if (!(gap < 1e-12)) {
    std::ostringstream msg;
    msg << "PlaneCurve: open curve, endpoint mismatch " << gap;
    throw ContractViolation(msg.str());
  }
  std::vector<Complex> s(n);
  for (int j = 0; j < n; ++j) s[j] = f(kTwoPi * j / n);
  return from_samples(s, max_degree);
}

PlaneCurve PlaneCurve::circle(Complex center, double radius, double phase) {
  return from_coefficients({0.0, center, std::polar(radius, phase)});
}

Complex PlaneCurve::coefficient(int k) const {
  const int K = degree();
  return (k < -K || k > K) ? Complex(0.0) : coeffs_[k + K];
}

Complex PlaneCurve::operator()(double s) const { return fourier_eval(coeffs_, s, 0); }

Complex PlaneCurve::derivative(double s, int order) const { return fourier_eval(coeffs_, s, order); }

Cplx PlaneCurve::eval(const Real& s) const {
  return lift(fourier_eval(coeffs_, s.v, 0), fourier_eval(coeffs_, s.v, 1), s);
}

std::vector<Complex> PlaneCurve::samples(int n) const {
  std::vector<Complex> out(n);
  for (int j = 0; j < n; ++j) out[j] = (*this)(kTwoPi * j / n);
  return out;
}

PlaneCurve PlaneCurve::transformed(Complex mul, Complex add) const {
  PlaneCurve c = *this;
  for (auto& x : c.coeffs_) x *= mul;
  c.coeffs_[degree()] += add;
  return c;
}

PlaneCurve PlaneCurve::scaled(double factor, Complex about) const {
  return transformed(factor, about * (1.0 - factor));
}

int PlaneCurve::orientation() const {
  const double a = enclosed_area(*this);
  return a > 0 ? 1 : (a < 0 ? -1 : 0);
}

double enclosed_area(const PlaneCurve& c, int n) {
  const PeriodicGrid grid(n > 0 ? n : auto_nodes(c.degree()));
  return integrate_periodic([&](double s) { return std::imag(std::conj(c(s)) * c.derivative(s)); }, grid) /
         kTwoPi;
}

bool is_embedded(const PlaneCurve& c, int n) {
  const auto p = c.samples(n);
  for (int i = 0; i < n; ++i) {
    const Complex a = p[i], b = p[(i + 1) % n];
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_cross(a, b, p[j], p[(j + 1) % n])) return false;
    }
  }
  return true;
}

PlaneCurve arclength_aligned(const PlaneCurve& c, int n, double turning_weight) {
  const int M = static_cast<int>(std::bit_ceil(static_cast<unsigned>(std::max(2048, 8 * c.degree()))));
  std::vector<Complex> speed(M);
  double length = 0.0;
  for (int j = 0; j < M; ++j) length += std::abs(c.derivative(kTwoPi * j / M)) * kTwoPi / M;
  // Arclength combined in quadrature with the turning angle, scaled by length / 2pi;
  // uniform on circles.
  const auto weight = [&](double s) {
    const Complex d1 = c.derivative(s);
    if (turning_weight == 0.0) return std::abs(d1);
    const double turn = std::imag(std::conj(d1) * c.derivative(s, 2)) / std::norm(d1);
    return std::hypot(std::abs(d1), turning_weight * length / kTwoPi * turn);
  };
  for (int j = 0; j < M; ++j) speed[j] = weight(kTwoPi * j / M);
  const int Ks = M / 2 - 1;
  const auto v = dft(speed, Ks);
  const double mean_speed = v[Ks].real();
  if (!(mean_speed > 0)) throw ConstructionError("arclength_aligned: degenerate curve");

  // Cumulative length from the Fourier series of the speed.
  // v_k (e^{iks}-1)/(ik) + v_{-k} (e^{-iks}-1)/(-ik) = 2 Re(v_k (e^{iks}-1)/(ik))
  std::vector<Complex> vi(Ks + 1);
  for (int k = 1; k <= Ks; ++k) vi[k] = v[Ks + k] / Complex(0.0, k);
  const auto length_to = [&](double s) {
    double acc = mean_speed * s;
    const Complex w = std::polar(1.0, s);
    Complex power = w;
    for (int k = 1; k <= Ks; ++k) {
      acc += 2.0 * std::real(vi[k] * (power - 1.0));
      power *= w;
    }
    return acc;
  };

  // Basepoint: maximal real part.
  double best = 0.0, best_re = -1e300;
  for (int j = 0; j < M; ++j) {
    const double re = c(kTwoPi * j / M).real();
    if (re > best_re) best_re = re, best = kTwoPi * j / M;
  }
  for (int it = 0; it < 50; ++it) {
    const double g = c.derivative(best).real(), h = c.derivative(best, 2).real();
    if (h >= 0) break;
    const double step = g / h;
    best -= step;
    if (std::abs(step) < 1e-15) break;
  }

  const double total = kTwoPi * mean_speed;
  const double origin = length_to(best);
  std::vector<Complex> pts(n);
  double s = best;
  for (int j = 0; j < n; ++j) {
    const double target = total * j / n;
    for (int it = 0; it < 60; ++it) {
      const double err = length_to(s) - origin - target;
      const double step = err / weight(s);
      s -= step;
      if (std::abs(step) < 1e-15) break;
    }
    pts[j] = c(s);
    s += kTwoPi / n * (total / (kTwoPi * mean_speed));
  }
  return PlaneCurve::from_samples(pts, n / 2 - 1);
}

PlaneCurve make_gamma(double target_area) {
  if (!(target_area > 0.0 && target_area < 0.5))
    throw PreconditionError("make_gamma: target area must lie in (0, 1/2)");
  // Star-shaped reference: rays from an interior anchor to the shrunken
  // half-disc boundary, Fejer-smoothed so the curve is a trigonometric polynomial.
  constexpr double anchor = 0.45;
  constexpr int samples = 512, K = 16;
  const double outer = 1.0 - kGammaMargin;
  std::vector<Complex> radius(samples);
  for (int j = 0; j < samples; ++j) {
    const double a = kTwoPi * j / samples;
    const double ca = std::cos(a);
    const double b = anchor * ca;
    double t = -b + std::sqrt(b * b - anchor * anchor + outer * outer);
    if (ca < 0.0) t = std::min(t, (anchor - kGammaMargin) / -ca);
    radius[j] = t;
  }
  const auto r = dft(radius, K);
  std::vector<Complex> coeffs(2 * (K + 1) + 1, 0.0);
  const int Kc = K + 1;
  for (int k = -K; k <= K; ++k) {
    const double fejer = 1.0 - std::abs(k) / (K + 1.0);
    coeffs[(k + 1) + Kc] = fejer * r[k + K];
  }
  coeffs[Kc] += anchor;
  const PlaneCurve base = PlaneCurve::from_coefficients(coeffs);

  const auto residual = [&](double factor) { return enclosed_area(base.scaled(factor, anchor)) - target_area; };
  if (residual(1.0) < 0.0) throw ConstructionError("make_gamma: target area not reachable inside the half-disc");
  const double factor = bisect(residual, 0.0, 1.0, 1e-14);
  PlaneCurve gamma = base.scaled(factor, anchor);

  double min_re = 1e300, max_abs = 0.0;
  for (const Complex z : gamma.samples(2048)) {
    min_re = std::min(min_re, z.real());
    max_abs = std::max(max_abs, std::abs(z));
  }
  if (min_re < kGammaMargin || max_abs > 1.0 - kGammaMargin)
    throw ConstructionError("make_gamma: margins violated for the requested area");
  return gamma;
}

Cplx exact_symplecto_f(const Real& x, const Real& y) { return {exp(x), exp(-x) * y}; }

Complex exact_symplecto_f(double x, double y) { return {std::exp(x), std::exp(-x) * y}; }

PlaneCurve f_of_circle(double area, int n) {
  const double rho = std::sqrt(area);
  return PlaneCurve::from_function(
      [rho](double s) { return exact_symplecto_f(rho * std::cos(s), rho * std::sin(s)); }, n, n / 2 - 1);
}

CurveIsotopy::CurveIsotopy(PlaneCurve start, PlaneCurve end, double area)
    : start_(std::move(start)), end_(std::move(end)), area_(area) {
  const int K = std::max(start_.degree(), end_.degree());
  std::vector<Complex> a(2 * K + 1), b(2 * K + 1);
  for (int k = -K; k <= K; ++k) {
    a[k + K] = start_.coefficient(k);
    b[k + K] = end_.coefficient(k);
  }
  start_ = PlaneCurve::from_coefficients(a);
  delta_.resize(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) delta_[i] = b[i] - a[i];
  for (int k = -K; k <= K; ++k) {
    const Complex ak = a[k + K], dk = delta_[k + K];
    area_poly_[0] += k * std::norm(ak);
    area_poly_[1] += 2.0 * k * std::real(std::conj(ak) * dk);
    area_poly_[2] += k * std::norm(dk);
  }
}

Real CurveIsotopy::scale(const Real& t) const {
  const Real raw = area_poly_[0] + t * (area_poly_[1] + t * area_poly_[2]);
  return sqrt(area_ / raw);
}

Cplx CurveIsotopy::eval(const Real& s, const Real& t) const {
  const int K = start_.degree();
  const Complex a0 = start_.coefficient(0), d0 = delta_[K];
  const Cplx a = start_.eval(s) - Cplx(a0);
  const Cplx d = lift(fourier_eval(delta_, s.v, 0) - d0, fourier_eval(delta_, s.v, 1), s);
  const Cplx mean = Cplx(a0) + Cplx(t) * d0;
  return mean + scale(t) * (a + Cplx(t) * d);
}

PlaneCurve CurveIsotopy::at(double t) const {
  const int K = start_.degree();
  const double sigma = scale(Real(t)).v;
  std::vector<Complex> c(2 * K + 1);
  for (int k = -K; k <= K; ++k) {
    const Complex raw = start_.coefficient(k) + t * delta_[k + K];
    c[k + K] = (k == 0) ? raw : sigma * raw;
  }
  return PlaneCurve::from_coefficients(std::move(c));
}

Alignment aligned_resolution(const PlaneCurve& c, int n_min, double tol, int n_max) {
  const auto gap = [&](int n, double w) {
    const PlaneCurve coarse = arclength_aligned(c, n, w), fine = arclength_aligned(c, 2 * n, w);
    double g = 0.0;
    for (int j = 0; j < n; ++j) {
      const double s = kTwoPi * (j + 0.5) / n;
      g = std::max(g, std::abs(coarse(s) - fine(s)));
    }
    return g;
  };
  int n = n_min;
  for (; n < n_max; n *= 2)
    for (double w : {0.0, 1.0})
      if (gap(n, w) < tol) return {n, w};
  return {n, 1.0};
}

CurveIsotopy curve_isotopy(const PlaneCurve& c0, const PlaneCurve& c1, const IsotopyConstraints& opts) {
  const double a0 = enclosed_area(c0), a1 = enclosed_area(c1);
  if (std::abs(a0 - a1) > 1e-9) {
    std::ostringstream msg;
    msg << "curve_isotopy: enclosed areas differ (" << a0 << " vs " << a1 << ")";
    throw PreconditionError(msg.str());
  }
  if (opts.avoid_origin) {
    const PeriodicGrid g(opts.check_samples);
    for (const PlaneCurve* c : {&c0, &c1})
      if (winding_number([c](double s) { return (*c)(s); }, g).winding != 0)
        throw PreconditionError("curve_isotopy: a curve encloses the origin");
  }
  const Alignment r0 = aligned_resolution(c0, opts.curve_samples), r1 = aligned_resolution(c1, opts.curve_samples);
  const int n = std::max(r0.samples, r1.samples);
  CurveIsotopy iso(arclength_aligned(c0, n, r0.turning_weight), arclength_aligned(c1, n, r1.turning_weight), a0);

  CurveIsotopyStats st;
  st.min_modulus = st.min_real = 1e300;
  const PeriodicGrid g(opts.check_samples);
  for (int i = 0; i < opts.check_times; ++i) {
    const double t = opts.check_times > 1 ? static_cast<double>(i) / (opts.check_times - 1) : 0.0;
    const PlaneCurve c = iso.at(t);
    for (const Complex z : c.samples(opts.check_samples)) {
      st.min_modulus = std::min(st.min_modulus, std::abs(z));
      st.max_modulus = std::max(st.max_modulus, std::abs(z));
      st.min_real = std::min(st.min_real, z.real());
    }
    st.max_area_drift = std::max(st.max_area_drift, std::abs(enclosed_area(c) - a0));
    if (!is_embedded(c, opts.check_samples)) st.embedded = false;
    if (opts.avoid_origin) {
      if (st.min_modulus < 1e-9 || winding_number([&c](double s) { return c(s); }, g).winding != 0)
        throw ConstructionError("curve_isotopy: path crosses the origin");
    }
  }
  if (!st.embedded) throw ConstructionError("curve_isotopy: intermediate curve is not embedded");
  if (opts.inside_half_disc && (st.min_real <= 0.0 || st.max_modulus >= 1.0))
    throw ConstructionError("curve_isotopy: path leaves the half-disc");
  iso.set_stats(st);
  return iso;
}

}  // namespace exotori
