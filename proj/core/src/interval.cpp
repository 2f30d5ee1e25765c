#include "radproof/interval.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <cstdlib>

namespace radproof {

double Interval::mid() const noexcept {
  if (lo == hi) return lo;
  if (!std::isfinite(lo) || !std::isfinite(hi)) return std::isfinite(lo) ? lo : (std::isfinite(hi) ? hi : 0.0);
  return 0.5 * lo + 0.5 * hi;
}

double Interval::rad() const noexcept {
  const double m = mid();
  return up(std::fmax(up(hi - m), up(m - lo)));
}

double Interval::mig() const noexcept {
  if (lo > 0) return lo;
  if (hi < 0) return -hi;
  return 0.0;
}

Interval Interval::ratio(long long p, long long q) {
  if (q == 0) throw DivisionByZeroInterval("ratio with zero denominator");
  const double a = static_cast<double>(p);
  const double b = static_cast<double>(q);
  if (static_cast<long long>(a) != p || static_cast<long long>(b) != q) {
    return Interval(down(a), up(a)) / Interval(down(b), up(b));
  }
  const double r = a / b;
  if (std::fma(r, b, -a) == 0.0) return Interval(r);
  return Interval(down(r), up(r));
}

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

Interval parse_number(const std::string& s) {
  if (s.empty()) throw ConfigError("empty numeric literal");
  char* end = nullptr;
  // Integers that fit a long long are exact; everything else is widened.
  const long long as_int = std::strtoll(s.c_str(), &end, 10);
  if (end && *end == '\0') return Interval::ratio(as_int, 1);
  const double x = std::strtod(s.c_str(), &end);
  if (!end || *end != '\0') throw ConfigError("malformed number '" + s + "'");
  return Interval(down(x), up(x));
}

}  // namespace

Interval Interval::parse(const std::string& text) {
  std::string s = trim(text);
  bool negate = false;
  if (!s.empty() && s[0] == '-' && s.rfind("-sqrt(", 0) == 0) {
    negate = true;
    s = s.substr(1);
  }
  if (s.rfind("sqrt(", 0) == 0 && s.back() == ')') {
    const Interval r = sqrt(parse(s.substr(5, s.size() - 6)));
    return negate ? -r : r;
  }
  if (const auto slash = s.find('/'); slash != std::string::npos) {
    const std::string num = trim(s.substr(0, slash));
    const std::string den = trim(s.substr(slash + 1));
    char* e1 = nullptr;
    char* e2 = nullptr;
    const long long p = std::strtoll(num.c_str(), &e1, 10);
    const long long q = std::strtoll(den.c_str(), &e2, 10);
    if (e1 && *e1 == '\0' && e2 && *e2 == '\0') return ratio(p, q);
    return parse_number(num) / parse_number(den);
  }
  return parse_number(s);
}

Interval& Interval::operator+=(const Interval& b) { return *this = *this + b; }
Interval& Interval::operator-=(const Interval& b) { return *this = *this - b; }
Interval& Interval::operator*=(const Interval& b) { return *this = *this * b; }
Interval& Interval::operator/=(const Interval& b) { return *this = *this / b; }

Interval operator+(const Interval& a, const Interval& b) {
  Interval r;
  r.lo = down(a.lo + b.lo);
  r.hi = up(a.hi + b.hi);
  return r;
}

Interval operator-(const Interval& a, const Interval& b) {
  Interval r;
  r.lo = down(a.lo - b.hi);
  r.hi = up(a.hi - b.lo);
  return r;
}

Interval operator*(const Interval& a, const Interval& b) {
  Interval r;
  if (a.lo == 0.0 && a.hi == 0.0) return r;
  if (b.lo == 0.0 && b.hi == 0.0) return r;
  if (a.lo >= 0 && b.lo >= 0) {
    r.lo = down(a.lo * b.lo);
    r.hi = up(a.hi * b.hi);
    if (r.lo < 0) r.lo = 0.0;
    return r;
  }
  const double p1 = a.lo * b.lo;
  const double p2 = a.lo * b.hi;
  const double p3 = a.hi * b.lo;
  const double p4 = a.hi * b.hi;
  r.lo = down(std::min(std::min(p1, p2), std::min(p3, p4)));
  r.hi = up(std::max(std::max(p1, p2), std::max(p3, p4)));
  return r;
}

Interval operator/(const Interval& a, const Interval& b) {
  if (b.lo <= 0.0 && b.hi >= 0.0) throw DivisionByZeroInterval("denominator interval contains zero");
  const double q1 = a.lo / b.lo;
  const double q2 = a.lo / b.hi;
  const double q3 = a.hi / b.lo;
  const double q4 = a.hi / b.hi;
  Interval r;
  r.lo = down(std::min(std::min(q1, q2), std::min(q3, q4)));
  r.hi = up(std::max(std::max(q1, q2), std::max(q3, q4)));
  return r;
}

Interval sqr(const Interval& a) {
  const double m = a.mig();
  const double M = a.mag();
  Interval r;
  r.lo = m == 0.0 ? 0.0 : std::max(0.0, down(m * m));
  r.hi = up(M * M);
  return r;
}

Interval sqrt(const Interval& a) {
  if (a.hi < 0) throw DomainError("square root of a negative interval");
  // Restricted to the domain: the negative part is discarded.
  const double l = a.lo <= 0 ? 0.0 : std::max(0.0, down(std::sqrt(a.lo)));
  return {l, up(std::sqrt(a.hi))};
}

Interval pow(const Interval& a, int n) {
  if (n < 0) return Interval(1.0) / pow(a, -n);
  if (n == 0) return Interval(1.0);
  if (n % 2 == 0) {
    Interval s = sqr(a);
    Interval r(1.0);
    for (int k = 0; k < n / 2; ++k) r = r * s;
    return r;
  }
  Interval r = a;
  for (int k = 1; k < n; ++k) r = r * a;
  return r;
}

Interval abs(const Interval& a) {
  if (a.lo >= 0) return a;
  if (a.hi <= 0) return -a;
  return {0.0, std::max(-a.lo, a.hi)};
}

Interval max(const Interval& a, const Interval& b) { return {std::max(a.lo, b.lo), std::max(a.hi, b.hi)}; }
Interval min(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::min(a.hi, b.hi)}; }
Interval hull(const Interval& a, const Interval& b) { return {std::min(a.lo, b.lo), std::max(a.hi, b.hi)}; }

std::string to_decimal(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  for (int prec = 1; prec <= 17; ++prec) {
    std::snprintf(buf, sizeof buf, "%.*g", prec, x);
    if (std::strtod(buf, nullptr) == x) return buf;
  }
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

CInterval& CInterval::operator*=(const CInterval& b) { return *this = *this * b; }

CInterval operator*(const CInterval& a, const CInterval& b) {
  if (a.is_real() && b.is_real()) return CInterval(a.re * b.re);
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

CInterval operator/(const CInterval& a, const CInterval& b) {
  const Interval den = sqr(b.re) + sqr(b.im);
  if (den.lo <= 0.0) throw DivisionByZeroInterval("complex denominator may vanish");
  const CInterval num = a * conj(b);
  return {num.re / den, num.im / den};
}

CInterval sqr(const CInterval& a) {
  if (a.is_real()) return CInterval(sqr(a.re));
  return {sqr(a.re) - sqr(a.im), Interval(2.0) * a.re * a.im};
}

double CInterval::mag() const {
  const double x = re.mag();
  const double y = im.mag();
  if (y == 0.0) return x;
  if (x == 0.0) return y;
  return up(std::sqrt(up(up(x * x) + up(y * y))));
}

Interval CInterval::modulus() const {
  const double x = re.mig();
  const double y = im.mig();
  double lo = 0.0;
  if (y == 0.0) lo = x;
  else if (x == 0.0) lo = y;
  else lo = std::max(0.0, down(std::sqrt(std::max(0.0, down(down(x * x) + down(y * y))))));
  return {lo, mag()};
}

CInterval disk(std::complex<double> z, double r) {
  return {Interval(down(z.real() - r), up(z.real() + r)), Interval(down(z.imag() - r), up(z.imag() + r))};
}

}  // namespace radproof
