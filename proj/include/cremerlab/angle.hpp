#pragma once

// Exact circle arithmetic.
//
// Key design decisions:
//  - Angles are arbitrary-precision rationals normalized to [0, 1); doubling
//    on floats destroys all combinatorial structure after ~50 iterations, so
//    every circle operation is exact and floats appear only as render-time
//    shadows (to_double).
//  - `rational` is the signed companion type used for arc lengths and error
//    bounds; it is always gcd-reduced with a positive denominator, so
//    operator== is structural equality.

#include <cstdint>
#include <string>

#include <boost/multiprecision/cpp_int.hpp>

#include "cremerlab/errors.hpp"

namespace cremerlab {

using bigint = boost::multiprecision::cpp_int;

struct rational {
  bigint num{0};
  bigint den{1};  // invariant: den > 0, gcd(|num|, den) = 1

  rational() = default;
  rational(long long n) : num(n) {}  // NOLINT: implicit by design
  rational(bigint n, bigint d) : num(std::move(n)), den(std::move(d)) { reduce(); }

  void reduce() {
    if (den == 0) fail(errc::invalid_argument, "rational with zero denominator");
    if (den < 0) { den = -den; num = -num; }
    bigint g = gcd(num < 0 ? bigint(-num) : num, den);
    if (g > 1) { num /= g; den /= g; }
  }

  friend rational operator+(const rational& a, const rational& b) {
    return rational(a.num * b.den + b.num * a.den, a.den * b.den);
  }
  friend rational operator-(const rational& a, const rational& b) {
    return rational(a.num * b.den - b.num * a.den, a.den * b.den);
  }
  friend rational operator*(const rational& a, const rational& b) {
    return rational(a.num * b.num, a.den * b.den);
  }
  rational operator-() const { rational r(*this); r.num = -r.num; return r; }

  friend bool operator==(const rational& a, const rational& b) {
    return a.num == b.num && a.den == b.den;
  }
  friend bool operator!=(const rational& a, const rational& b) { return !(a == b); }
  friend bool operator<(const rational& a, const rational& b) {
    return a.num * b.den < b.num * a.den;
  }
  friend bool operator<=(const rational& a, const rational& b) { return !(b < a); }
  friend bool operator>(const rational& a, const rational& b) { return b < a; }
  friend bool operator>=(const rational& a, const rational& b) { return !(a < b); }

  // Exact double conversion for |value| < 2^63 via a 64-bit fractional scan.
  double to_double() const {
    bigint n = num < 0 ? bigint(-num) : num;
    bigint ip = n / den;
    bigint fr = n % den;
    auto whole = static_cast<double>(ip.convert_to<std::uint64_t>());
    bigint scaled = (fr << 64) / den;
    auto frac = static_cast<double>(scaled.convert_to<std::uint64_t>()) * 0x1p-64;
    double v = whole + frac;
    return num < 0 ? -v : v;
  }

  std::string to_string() const {
    return num.str() + "/" + den.str();
  }
};

// A point on R/Z. Stored value is always in [0, 1).
class angle {
 public:
  angle() = default;
  explicit angle(rational v) : v_(std::move(v)) { normalize(); }
  angle(bigint p, bigint q) : v_(std::move(p), std::move(q)) { normalize(); }
  angle(long long p, long long q) : v_(bigint(p), bigint(q)) { normalize(); }

  const rational& value() const { return v_; }
  const bigint& num() const { return v_.num; }
  const bigint& den() const { return v_.den; }

  // 2*theta mod 1, exact.
  angle doubled() const { return angle(rational(2 * v_.num, v_.den)); }

  angle plus(const rational& r) const { return angle(v_ + r); }
  angle antipode() const { return plus(rational(1, 2)); }

  double to_double() const { return v_.to_double(); }
  std::string to_string() const { return v_.to_string(); }

  friend bool operator==(const angle& a, const angle& b) { return a.v_ == b.v_; }
  friend bool operator!=(const angle& a, const angle& b) { return !(a == b); }
  friend bool operator<(const angle& a, const angle& b) { return a.v_ < b.v_; }

  // Membership in the open arc running counterclockwise from `from` to `to`.
  // The whole circle minus one point when from == to.
  bool in_open_arc(const angle& from, const angle& to) const {
    if (from < to) return from < *this && *this < to;
    return from < *this || *this < to;
  }

  static angle parse(const std::string& s) {
    auto bad = [&] { fail(errc::invalid_argument, "expected angle \"p/q\", got \"" + s + "\""); };
    auto slash = s.find('/');
    std::string ps = slash == std::string::npos ? s : s.substr(0, slash);
    std::string qs = slash == std::string::npos ? "1" : s.substr(slash + 1);
    if (ps.empty() || qs.empty()) bad();
    std::size_t i0 = ps[0] == '-' ? 1 : 0;
    if (ps.size() == i0) bad();
    for (std::size_t i = i0; i < ps.size(); ++i)
      if (ps[i] < '0' || ps[i] > '9') bad();
    for (char c : qs)
      if (c < '0' || c > '9') bad();
    return angle(rational(bigint(ps), bigint(qs)));
  }

 private:
  rational v_;

  void normalize() {
    bigint r = v_.num % v_.den;
    if (r < 0) r += v_.den;
    v_.num = std::move(r);
    // den already positive and gcd-reduced; reducing mod den preserves both.
  }
};

// Length of the shortest arc between two angles, in [0, 1/2].
inline rational arc_distance(const angle& a, const angle& b) {
  rational d = a < b ? b.value() - a.value() : a.value() - b.value();
  rational complement = rational(1) - d;
  return d < complement ? d : complement;
}

// The scaled tent map governing arc-distance dynamics under doubling:
// T(x) = 2x for x <= 1/4, 1 - 2x for x in (1/4, 1/2].
inline rational tent(const rational& x) {
  if (x < rational(0) || x > rational(1, 2))
    fail(errc::invalid_argument, "tent domain is [0, 1/2]");
  rational twice = x + x;
  return x <= rational(1, 4) ? twice : rational(1) - twice;
}

}  // namespace cremerlab
