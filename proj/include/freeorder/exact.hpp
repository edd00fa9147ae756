#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace freeorder {

// Arbitrary-precision signed integer. Base 2^32 limbs, little-endian,
// no leading zero limbs, sign kept separately (zero has sign 0).
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);

  static BigInt from_u64(std::uint64_t v);
  static BigInt factorial(unsigned n);

  bool is_zero() const { return sign_ == 0; }
  int sign() const { return sign_; }
  bool odd() const { return sign_ != 0 && (mag_[0] & 1u); }

  BigInt operator-() const;
  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  BigInt operator/(const BigInt& o) const;
  BigInt operator%(const BigInt& o) const;
  BigInt& operator+=(const BigInt& o) { return *this = *this + o; }
  BigInt& operator-=(const BigInt& o) { return *this = *this - o; }
  BigInt& operator*=(const BigInt& o) { return *this = *this * o; }

  // Truncated division: a = q*b + r with |r| < |b| and sign(r) = sign(a).
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

  static BigInt gcd(const BigInt& a, const BigInt& b);  // nonnegative
  static BigInt pow_u(const BigInt& base, unsigned e);

  bool operator==(const BigInt& o) const;
  bool operator!=(const BigInt& o) const { return !(*this == o); }
  bool operator<(const BigInt& o) const { return cmp(o) < 0; }
  bool operator<=(const BigInt& o) const { return cmp(o) <= 0; }
  bool operator>(const BigInt& o) const { return cmp(o) > 0; }
  bool operator>=(const BigInt& o) const { return cmp(o) >= 0; }
  int cmp(const BigInt& o) const;

  double to_double() const;
  // value = returned mantissa * 2^(*exp2); safe for values beyond double range.
  double to_double_exp(long* exp2) const;
  // Throws if the value does not fit.
  long long to_ll() const;
  bool fits_ll() const;
  std::string to_string() const;  // decimal

  std::size_t bit_length() const;

 private:
  int sign_ = 0;
  std::vector<std::uint32_t> mag_;

  void trim();
  static int cmp_mag(const std::vector<std::uint32_t>& a,
                     const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // requires a >= b
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static void divmod_mag(const std::vector<std::uint32_t>& a,
                         const std::vector<std::uint32_t>& b,
                         std::vector<std::uint32_t>& q,
                         std::vector<std::uint32_t>& r);
  static void shl_bits(std::vector<std::uint32_t>& v, unsigned bits);
  static void shr_bits(std::vector<std::uint32_t>& v, unsigned bits);
  friend class BigRat;
};

// Exact rational on BigInt. Always normalized: den > 0, gcd(num, den) = 1,
// zero is 0/1.
class BigRat {
 public:
  BigRat() : num_(0), den_(1) {}
  BigRat(long long v) : num_(v), den_(1) {}
  BigRat(long long n, long long d) : BigRat(BigInt(n), BigInt(d)) {}
  BigRat(BigInt n, BigInt d);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  int sign() const { return num_.sign(); }

  BigRat operator-() const;
  BigRat operator+(const BigRat& o) const;
  BigRat operator-(const BigRat& o) const;
  BigRat operator*(const BigRat& o) const;
  BigRat operator/(const BigRat& o) const;
  BigRat& operator+=(const BigRat& o) { return *this = *this + o; }
  BigRat& operator-=(const BigRat& o) { return *this = *this - o; }
  BigRat& operator*=(const BigRat& o) { return *this = *this * o; }

  bool operator==(const BigRat& o) const;
  bool operator!=(const BigRat& o) const { return !(*this == o); }
  bool operator<(const BigRat& o) const { return cmp(o) < 0; }
  bool operator<=(const BigRat& o) const { return cmp(o) <= 0; }
  bool operator>(const BigRat& o) const { return cmp(o) > 0; }
  bool operator>=(const BigRat& o) const { return cmp(o) >= 0; }
  int cmp(const BigRat& o) const;

  double to_double() const;
  std::string to_string() const;  // "num/den" ("num" when den == 1)

 private:
  BigInt num_, den_;
  void normalize();
};

}  // namespace freeorder
