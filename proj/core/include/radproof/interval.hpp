#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <string>

#include "radproof/errors.hpp"

namespace radproof {

/// Largest double strictly below / above x. Round-to-nearest results are
/// pushed one ulp outward to obtain rigorous bounds.
inline double down(double x) noexcept { return std::nextafter(x, -std::numeric_limits<double>::infinity()); }
inline double up(double x) noexcept { return std::nextafter(x, std::numeric_limits<double>::infinity()); }

/// Closed real interval [lo, hi] with outward-rounded arithmetic.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  constexpr Interval() = default;
  constexpr Interval(double x) : lo(x), hi(x) {}  // NOLINT: points convert implicitly
  Interval(double l, double h) : lo(l), hi(h) {
    if (!(l <= h)) throw InvalidInterval("lower bound exceeds upper bound");
  }

  static Interval hull(double a, double b) { return a <= b ? Interval(a, b) : Interval(b, a); }
  /// Enclosure of p/q for integers p, q (exact when representable).
  static Interval ratio(long long p, long long q);
  /// Parses "x", "p/q", "sqrt(x)" or "-sqrt(x)" into an enclosure.
  static Interval parse(const std::string& text);
  static Interval entire() {
    return {-std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  }

  double mid() const noexcept;
  double rad() const noexcept;  ///< upper bound on the distance from mid() to either end
  double width() const noexcept { return up(hi - lo); }
  double mag() const noexcept { return std::fmax(std::fabs(lo), std::fabs(hi)); }
  double mig() const noexcept;
  bool contains(double x) const noexcept { return lo <= x && x <= hi; }
  bool contains(const Interval& x) const noexcept { return lo <= x.lo && x.hi <= hi; }
  bool is_finite() const noexcept { return std::isfinite(lo) && std::isfinite(hi); }
  bool is_point() const noexcept { return lo == hi; }

  Interval& operator+=(const Interval& b);
  Interval& operator-=(const Interval& b);
  Interval& operator*=(const Interval& b);
  Interval& operator/=(const Interval& b);
};

Interval operator+(const Interval& a, const Interval& b);
Interval operator-(const Interval& a, const Interval& b);
Interval operator*(const Interval& a, const Interval& b);
Interval operator/(const Interval& a, const Interval& b);
inline Interval operator-(const Interval& a) { return {-a.hi, -a.lo}; }
inline bool operator==(const Interval& a, const Interval& b) { return a.lo == b.lo && a.hi == b.hi; }

Interval sqr(const Interval& a);
Interval sqrt(const Interval& a);
Interval pow(const Interval& a, int n);
Interval abs(const Interval& a);
Interval max(const Interval& a, const Interval& b);
Interval min(const Interval& a, const Interval& b);
Interval hull(const Interval& a, const Interval& b);
/// Upper-bound-only helpers for nonnegative quantities.
inline double add_up(double a, double b) { return up(a + b); }
inline double mul_up(double a, double b) { return up(a * b); }
inline double div_up(double a, double b) { return up(a / b); }

/// Shortest decimal string that parses back to exactly x.
std::string to_decimal(double x);

/// Complex interval as a rectangle re + i·im.
struct CInterval {
  Interval re;
  Interval im;

  constexpr CInterval() = default;
  constexpr CInterval(double x) : re(x), im(0.0) {}  // NOLINT
  CInterval(const Interval& r) : re(r), im(0.0) {}   // NOLINT
  CInterval(const Interval& r, const Interval& i) : re(r), im(i) {}
  explicit CInterval(std::complex<double> z) : re(z.real()), im(z.imag()) {}

  std::complex<double> mid() const { return {re.mid(), im.mid()}; }
  /// Upper bound of |z| over the rectangle.
  double mag() const;
  /// Enclosure of {|z|} over the rectangle.
  Interval modulus() const;
  bool contains(std::complex<double> z) const { return re.contains(z.real()) && im.contains(z.imag()); }
  bool is_real() const { return im.lo == 0.0 && im.hi == 0.0; }

  CInterval& operator+=(const CInterval& b) { re += b.re; im += b.im; return *this; }
  CInterval& operator-=(const CInterval& b) { re -= b.re; im -= b.im; return *this; }
  CInterval& operator*=(const CInterval& b);
};

inline CInterval operator+(const CInterval& a, const CInterval& b) { return {a.re + b.re, a.im + b.im}; }
inline CInterval operator-(const CInterval& a, const CInterval& b) { return {a.re - b.re, a.im - b.im}; }
inline CInterval operator-(const CInterval& a) { return {-a.re, -a.im}; }
CInterval operator*(const CInterval& a, const CInterval& b);
CInterval operator/(const CInterval& a, const CInterval& b);
inline CInterval operator*(const Interval& a, const CInterval& b) { return {a * b.re, a * b.im}; }
inline CInterval operator*(const CInterval& a, const Interval& b) { return {a.re * b, a.im * b}; }
inline CInterval conj(const CInterval& a) { return {a.re, -a.im}; }
CInterval sqr(const CInterval& a);
/// Rectangle containing the closed disk of radius r around z.
CInterval disk(std::complex<double> z, double r);

// Generic helpers used by templated sequence / polynomial code.

/// Enclosure of |x| (a plain number for floating-point carriers).
inline double modulus(double x) { return std::fabs(x); }
inline double modulus(const std::complex<double>& z) { return std::abs(z); }
inline Interval modulus(const Interval& x) { return abs(x); }
inline Interval modulus(const CInterval& z) { return z.modulus(); }

template <class T> struct scalar_traits;
template <> struct scalar_traits<double> {
  using real = double;
  using complex = std::complex<double>;
  static double from(const Interval& x) { return x.mid(); }
};
template <> struct scalar_traits<std::complex<double>> {
  using real = double;
  using complex = std::complex<double>;
  static std::complex<double> from(const Interval& x) { return x.mid(); }
};
template <> struct scalar_traits<Interval> {
  using real = Interval;
  using complex = CInterval;
  static Interval from(const Interval& x) { return x; }
};
template <> struct scalar_traits<CInterval> {
  using real = Interval;
  using complex = CInterval;
  static CInterval from(const Interval& x) { return CInterval(x); }
};

/// Converts an exact interval constant into the carrier scalar type.
template <class T> T scalar_from(const Interval& x) { return scalar_traits<T>::from(x); }

/// Upper endpoint of a norm-like quantity, for both carriers.
inline double upper(double x) { return x; }
inline double upper(const Interval& x) { return x.hi; }

}  // namespace radproof
