#pragma once

#include <cstdint>
#include <numeric>
#include <stdexcept>
#include <string>

#include "freeorder/exact.hpp"

namespace freeorder {

// Exact rational on 64-bit words with 128-bit intermediates. All probability
// arithmetic in the construction path runs on these; values that survive
// reduction must fit in 64 bits or the operation throws. Always normalized:
// den > 0, gcd(num, den) = 1.
struct Rat {
  long long num = 0;
  long long den = 1;

  Rat() = default;
  Rat(long long v) : num(v), den(1) {}
  Rat(long long n, long long d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    __int128 nn = n, dd = d;
    if (dd < 0) {
      nn = -nn;
      dd = -dd;
    }
    assign(nn, dd);
  }

  static Rat make(__int128 n, __int128 d) {
    if (d == 0) throw std::domain_error("Rat: zero denominator");
    Rat r;
    if (d < 0) {
      n = -n;
      d = -d;
    }
    r.assign(n, d);
    return r;
  }

  bool is_zero() const { return num == 0; }

  Rat operator-() const {
    Rat r;
    r.num = -num;
    r.den = den;
    return r;
  }
  Rat operator+(const Rat& o) const {
    return make(static_cast<__int128>(num) * o.den + static_cast<__int128>(o.num) * den,
                static_cast<__int128>(den) * o.den);
  }
  Rat operator-(const Rat& o) const {
    return make(static_cast<__int128>(num) * o.den - static_cast<__int128>(o.num) * den,
                static_cast<__int128>(den) * o.den);
  }
  Rat operator*(const Rat& o) const {
    return make(static_cast<__int128>(num) * o.num, static_cast<__int128>(den) * o.den);
  }
  Rat operator/(const Rat& o) const {
    if (o.num == 0) throw std::domain_error("Rat: division by zero");
    return make(static_cast<__int128>(num) * o.den, static_cast<__int128>(den) * o.num);
  }
  Rat& operator+=(const Rat& o) { return *this = *this + o; }
  Rat& operator-=(const Rat& o) { return *this = *this - o; }
  Rat& operator*=(const Rat& o) { return *this = *this * o; }

  int cmp(const Rat& o) const {
    __int128 l = static_cast<__int128>(num) * o.den;
    __int128 r = static_cast<__int128>(o.num) * den;
    return l < r ? -1 : (l > r ? 1 : 0);
  }
  bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
  bool operator!=(const Rat& o) const { return !(*this == o); }
  bool operator<(const Rat& o) const { return cmp(o) < 0; }
  bool operator<=(const Rat& o) const { return cmp(o) <= 0; }
  bool operator>(const Rat& o) const { return cmp(o) > 0; }
  bool operator>=(const Rat& o) const { return cmp(o) >= 0; }

  double to_double() const { return static_cast<double>(num) / static_cast<double>(den); }
  long double to_long_double() const {
    return static_cast<long double>(num) / static_cast<long double>(den);
  }
  BigRat to_bigrat() const { return BigRat(num, den); }
  std::string to_string() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
  }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b) {
      __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  void assign(__int128 n, __int128 d) {
    if (n == 0) {
      num = 0;
      den = 1;
      return;
    }
    __int128 g = gcd128(n, d);
    n /= g;
    d /= g;
    constexpr __int128 kMax = 0x7fffffffffffffffll;
    if (n > kMax || n < -kMax || d > kMax)
      throw std::overflow_error("Rat: value exceeds 64-bit range");
    num = static_cast<long long>(n);
    den = static_cast<long long>(d);
  }
};

}  // namespace freeorder
