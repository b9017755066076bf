#pragma once

// Forward-mode first derivatives.
//
// Jet<N> carries a value and N partial derivatives with respect to a fixed set
// of seed variables. CJet<N> is the complex analogue, stored as a (re, im) pair
// of real jets; std::complex<Jet> is unspecified by the standard so we roll our
// own minimal complex arithmetic.

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace exotori {

template <std::size_t N>
struct Jet {
  double v = 0.0;
  std::array<double, N> d{};

  constexpr Jet() = default;
  constexpr Jet(double value) : v(value) {}  // NOLINT: implicit constants are the point
  constexpr Jet(double value, const std::array<double, N>& partials) : v(value), d(partials) {}

  static constexpr Jet variable(double value, std::size_t index) {
    Jet j(value);
    j.d[index] = 1.0;
    return j;
  }

  Jet& operator+=(const Jet& o) {
    v += o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Jet& operator-=(const Jet& o) {
    v -= o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Jet& operator*=(const Jet& o) {
    for (std::size_t i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Jet& operator/=(const Jet& o) {
    const double inv = 1.0 / o.v;
    for (std::size_t i = 0; i < N; ++i) d[i] = (d[i] - v * inv * o.d[i]) * inv;
    v *= inv;
    return *this;
  }
};

template <std::size_t N> Jet<N> operator+(Jet<N> a, const Jet<N>& b) { return a += b; }
template <std::size_t N> Jet<N> operator-(Jet<N> a, const Jet<N>& b) { return a -= b; }
template <std::size_t N> Jet<N> operator*(Jet<N> a, const Jet<N>& b) { return a *= b; }
template <std::size_t N> Jet<N> operator/(Jet<N> a, const Jet<N>& b) { return a /= b; }
template <std::size_t N> Jet<N> operator+(Jet<N> a, double b) { a.v += b; return a; }
template <std::size_t N> Jet<N> operator+(double a, Jet<N> b) { b.v += a; return b; }
template <std::size_t N> Jet<N> operator-(Jet<N> a, double b) { a.v -= b; return a; }
template <std::size_t N> Jet<N> operator-(double a, const Jet<N>& b) { return Jet<N>(a) - b; }
template <std::size_t N>
Jet<N> operator*(Jet<N> a, double b) {
  a.v *= b;
  for (auto& x : a.d) x *= b;
  return a;
}
template <std::size_t N> Jet<N> operator*(double a, const Jet<N>& b) { return b * a; }
template <std::size_t N> Jet<N> operator/(const Jet<N>& a, double b) { return a * (1.0 / b); }
template <std::size_t N> Jet<N> operator/(double a, const Jet<N>& b) { return Jet<N>(a) / b; }
template <std::size_t N> Jet<N> operator-(const Jet<N>& a) { return a * -1.0; }

namespace detail {
// f(a) with f'(a) = slope.
template <std::size_t N>
Jet<N> chain(const Jet<N>& a, double value, double slope) {
  Jet<N> r(value);
  for (std::size_t i = 0; i < N; ++i) r.d[i] = slope * a.d[i];
  return r;
}
}  // namespace detail

template <std::size_t N> Jet<N> sin(const Jet<N>& a) { return detail::chain(a, std::sin(a.v), std::cos(a.v)); }
template <std::size_t N> Jet<N> cos(const Jet<N>& a) { return detail::chain(a, std::cos(a.v), -std::sin(a.v)); }
template <std::size_t N>
Jet<N> exp(const Jet<N>& a) {
  const double e = std::exp(a.v);
  return detail::chain(a, e, e);
}
template <std::size_t N> Jet<N> log(const Jet<N>& a) { return detail::chain(a, std::log(a.v), 1.0 / a.v); }
template <std::size_t N>
Jet<N> sqrt(const Jet<N>& a) {
  const double r = std::sqrt(a.v);
  return detail::chain(a, r, 0.5 / r);
}
template <std::size_t N>
Jet<N> atan2(const Jet<N>& y, const Jet<N>& x) {
  const double r2 = x.v * x.v + y.v * y.v;
  Jet<N> r(std::atan2(y.v, x.v));
  for (std::size_t i = 0; i < N; ++i) r.d[i] = (x.v * y.d[i] - y.v * x.d[i]) / r2;
  return r;
}

template <std::size_t N>
struct CJet {
  Jet<N> re;
  Jet<N> im;

  constexpr CJet() = default;
  constexpr CJet(const Jet<N>& r, const Jet<N>& i = Jet<N>()) : re(r), im(i) {}
  constexpr CJet(double r) : re(r) {}  // NOLINT
  CJet(std::complex<double> c) : re(c.real()), im(c.imag()) {}  // NOLINT

  std::complex<double> value() const { return {re.v, im.v}; }
  std::complex<double> partial(std::size_t i) const { return {re.d[i], im.d[i]}; }

  CJet& operator+=(const CJet& o) { re += o.re; im += o.im; return *this; }
  CJet& operator-=(const CJet& o) { re -= o.re; im -= o.im; return *this; }
};

template <std::size_t N> CJet<N> operator+(CJet<N> a, const CJet<N>& b) { return a += b; }
template <std::size_t N> CJet<N> operator-(CJet<N> a, const CJet<N>& b) { return a -= b; }
template <std::size_t N> CJet<N> operator-(const CJet<N>& a) { return {-a.re, -a.im}; }
template <std::size_t N>
CJet<N> operator*(const CJet<N>& a, const CJet<N>& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}
template <std::size_t N>
CJet<N> operator*(const CJet<N>& a, std::complex<double> b) {
  return {a.re * b.real() - a.im * b.imag(), a.re * b.imag() + a.im * b.real()};
}
template <std::size_t N> CJet<N> operator*(std::complex<double> a, const CJet<N>& b) { return b * a; }
template <std::size_t N> CJet<N> operator*(const CJet<N>& a, const Jet<N>& b) { return {a.re * b, a.im * b}; }
template <std::size_t N> CJet<N> operator*(const Jet<N>& a, const CJet<N>& b) { return b * a; }
template <std::size_t N> CJet<N> operator*(const CJet<N>& a, double b) { return {a.re * b, a.im * b}; }
template <std::size_t N> CJet<N> operator*(double a, const CJet<N>& b) { return b * a; }
template <std::size_t N>
CJet<N> operator/(const CJet<N>& a, const CJet<N>& b) {
  const Jet<N> den = b.re * b.re + b.im * b.im;
  return {(a.re * b.re + a.im * b.im) / den, (a.im * b.re - a.re * b.im) / den};
}

template <std::size_t N> CJet<N> conj(const CJet<N>& a) { return {a.re, -a.im}; }
template <std::size_t N> Jet<N> norm(const CJet<N>& a) { return a.re * a.re + a.im * a.im; }
template <std::size_t N> Jet<N> abs(const CJet<N>& a) { return sqrt(norm(a)); }
template <std::size_t N> Jet<N> real(const CJet<N>& a) { return a.re; }
template <std::size_t N> Jet<N> imag(const CJet<N>& a) { return a.im; }
/// e^{i a} for real a.
template <std::size_t N> CJet<N> cis(const Jet<N>& a) { return {cos(a), sin(a)}; }
template <std::size_t N>
CJet<N> exp(const CJet<N>& a) {
  return exp(a.re) * cis(a.im);
}

// Seed variables for charts and paths: 0 = theta, 1 = s (or tau), 2 = t.
inline constexpr std::size_t kSeeds = 3;
using Real = Jet<kSeeds>;
using Cplx = CJet<kSeeds>;

}  // namespace exotori
