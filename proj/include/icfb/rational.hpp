#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <string_view>

namespace icfb {

// Exact rational arithmetic on 64-bit numerator/denominator, always kept in
// lowest terms with a positive denominator. The deterministic-channel math in
// this project only ever produces tiny values, but every intermediate product
// goes through 128 bits so the type stays total.
class Rational {
 public:
  constexpr Rational() = default;
  constexpr Rational(long long n) : num_(n) {}  // NOLINT: implicit on purpose
  constexpr Rational(int n) : num_(n) {}        // NOLINT
  Rational(long long n, long long d) { *this = make(static_cast<i128>(n), static_cast<i128>(d)); }

  long long num() const { return num_; }
  long long den() const { return den_; }
  bool is_integer() const { return den_ == 1; }
  double to_double() const { return static_cast<double>(num_) / static_cast<double>(den_); }

  // Accepts "3", "-7/2" and decimal forms like "0.125".
  static Rational parse(std::string_view text);

  friend Rational operator+(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ + i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator-(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.den_ - i128(b.num_) * a.den_, i128(a.den_) * b.den_);
  }
  friend Rational operator*(const Rational& a, const Rational& b) {
    return make(i128(a.num_) * b.num_, i128(a.den_) * b.den_);
  }
  friend Rational operator/(const Rational& a, const Rational& b) {
    if (b.num_ == 0) throw std::domain_error("rational: division by zero");
    return make(i128(a.num_) * b.den_, i128(a.den_) * b.num_);
  }
  Rational operator-() const {
    Rational r;
    r.num_ = -num_;
    r.den_ = den_;
    return r;
  }
  Rational& operator+=(const Rational& o) { return *this = *this + o; }
  Rational& operator-=(const Rational& o) { return *this = *this - o; }
  Rational& operator*=(const Rational& o) { return *this = *this * o; }
  Rational& operator/=(const Rational& o) { return *this = *this / o; }

  friend bool operator==(const Rational& a, const Rational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }
  friend bool operator!=(const Rational& a, const Rational& b) { return !(a == b); }
  friend bool operator<(const Rational& a, const Rational& b) {
    return i128(a.num_) * b.den_ < i128(b.num_) * a.den_;
  }
  friend bool operator>(const Rational& a, const Rational& b) { return b < a; }
  friend bool operator<=(const Rational& a, const Rational& b) { return !(b < a); }
  friend bool operator>=(const Rational& a, const Rational& b) { return !(a < b); }

  std::string str() const {
    if (den_ == 1) return std::to_string(num_);
    return std::to_string(num_) + "/" + std::to_string(den_);
  }

 private:
  using i128 = __int128;
  using u128 = unsigned __int128;

  static u128 gcd128(u128 a, u128 b) {
    while (b != 0) {
      u128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }

  static Rational make(i128 n, i128 d) {
    if (d == 0) throw std::domain_error("rational: zero denominator");
    if (d < 0) {
      n = -n;
      d = -d;
    }
    u128 un = n < 0 ? u128(-n) : u128(n);
    u128 g = gcd128(un, u128(d));
    if (g > 1) {
      n /= i128(g);
      d /= i128(g);
    }
    constexpr i128 lo = std::numeric_limits<long long>::min();
    constexpr i128 hi = std::numeric_limits<long long>::max();
    if (n < lo || n > hi || d > hi) throw std::overflow_error("rational: overflow");
    Rational r;
    r.num_ = static_cast<long long>(n);
    r.den_ = static_cast<long long>(d);
    return r;
  }

  long long num_ = 0;
  long long den_ = 1;
};

inline Rational abs(const Rational& x) { return x.num() < 0 ? -x : x; }

inline Rational Rational::parse(std::string_view text) {
  auto fail = [&] { throw std::invalid_argument("rational: cannot parse '" + std::string(text) + "'"); };
  if (text.empty()) fail();
  bool neg = false;
  std::size_t i = 0;
  if (text[0] == '+' || text[0] == '-') {
    neg = text[0] == '-';
    i = 1;
  }
  long long intpart = 0, num = 0, den = 1;
  bool any_digit = false, in_frac = false, is_ratio = false;
  for (; i < text.size(); ++i) {
    char c = text[i];
    if (c >= '0' && c <= '9') {
      any_digit = true;
      if (is_ratio) {
        den = den * 10 + (c - '0');
      } else if (in_frac) {
        num = num * 10 + (c - '0');
        intpart *= 10;  // tracks the power of ten alongside the digits
      } else {
        intpart = intpart * 10 + (c - '0');
      }
    } else if (c == '.' && !in_frac && !is_ratio) {
      in_frac = true;
      num = intpart;
      intpart = 1;
    } else if (c == '/' && !in_frac && !is_ratio && any_digit) {
      is_ratio = true;
      den = 0;
    } else {
      fail();
    }
  }
  if (!any_digit) fail();
  Rational r;
  if (is_ratio) {
    if (den == 0) fail();
    r = Rational(intpart, den);
  } else if (in_frac) {
    r = Rational(num, intpart == 0 ? 1 : intpart);
  } else {
    r = Rational(intpart);
  }
  return neg ? -r : r;
}

}  // namespace icfb
