#include "freeorder/exact.hpp"

#include <algorithm>
#include <cmath>

namespace freeorder {

namespace {
constexpr std::uint64_t kBase = 1ull << 32;
}

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  // avoid UB on LLONG_MIN
  std::uint64_t m = v < 0 ? ~static_cast<std::uint64_t>(v) + 1 : static_cast<std::uint64_t>(v);
  mag_.push_back(static_cast<std::uint32_t>(m & 0xffffffffu));
  if (m >> 32) mag_.push_back(static_cast<std::uint32_t>(m >> 32));
}

BigInt BigInt::from_u64(std::uint64_t v) {
  BigInt r;
  if (v == 0) return r;
  r.sign_ = 1;
  r.mag_.push_back(static_cast<std::uint32_t>(v & 0xffffffffu));
  if (v >> 32) r.mag_.push_back(static_cast<std::uint32_t>(v >> 32));
  return r;
}

BigInt BigInt::factorial(unsigned n) {
  BigInt r(1);
  for (unsigned i = 2; i <= n; ++i) r = r * BigInt(static_cast<long long>(i));
  return r;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i-- > 0;) {
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  const auto& big = a.size() >= b.size() ? a : b;
  const auto& small = a.size() >= b.size() ? b : a;
  std::vector<std::uint32_t> r(big.size() + 1, 0);
  std::uint64_t carry = 0;
  for (std::size_t i = 0; i < big.size(); ++i) {
    std::uint64_t s = carry + big[i] + (i < small.size() ? small[i] : 0);
    r[i] = static_cast<std::uint32_t>(s & 0xffffffffu);
    carry = s >> 32;
  }
  r[big.size()] = static_cast<std::uint32_t>(carry);
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> r(a.size(), 0);
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::int64_t d = static_cast<std::int64_t>(a[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (d < 0) {
      d += static_cast<std::int64_t>(kBase);
      borrow = 1;
    } else {
      borrow = 0;
    }
    r[i] = static_cast<std::uint32_t>(d);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint32_t> r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size(); ++j) {
      std::uint64_t cur =
          r[i + j] + carry + static_cast<std::uint64_t>(a[i]) * b[j];
      r[i + j] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
    }
    std::size_t k = i + b.size();
    while (carry) {
      std::uint64_t cur = r[k] + carry;
      r[k] = static_cast<std::uint32_t>(cur & 0xffffffffu);
      carry = cur >> 32;
      ++k;
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

void BigInt::shl_bits(std::vector<std::uint32_t>& v, unsigned bits) {
  if (v.empty() || bits == 0) return;
  unsigned limbs = bits / 32, rem = bits % 32;
  std::vector<std::uint32_t> r(v.size() + limbs + 1, 0);
  for (std::size_t i = 0; i < v.size(); ++i) {
    std::uint64_t x = static_cast<std::uint64_t>(v[i]) << rem;
    r[i + limbs] |= static_cast<std::uint32_t>(x & 0xffffffffu);
    r[i + limbs + 1] |= static_cast<std::uint32_t>(x >> 32);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  v = std::move(r);
}

void BigInt::shr_bits(std::vector<std::uint32_t>& v, unsigned bits) {
  unsigned limbs = bits / 32, rem = bits % 32;
  if (limbs >= v.size()) {
    v.clear();
    return;
  }
  std::vector<std::uint32_t> r(v.size() - limbs, 0);
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::uint64_t x = v[i + limbs] >> rem;
    if (rem && i + limbs + 1 < v.size())
      x |= static_cast<std::uint64_t>(v[i + limbs + 1]) << (32 - rem);
    r[i] = static_cast<std::uint32_t>(x & 0xffffffffu);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  v = std::move(r);
}

// Knuth algorithm D, base 2^32.
void BigInt::divmod_mag(const std::vector<std::uint32_t>& a,
                        const std::vector<std::uint32_t>& b,
                        std::vector<std::uint32_t>& q,
                        std::vector<std::uint32_t>& r) {
  if (b.empty()) throw std::domain_error("BigInt: division by zero");
  if (cmp_mag(a, b) < 0) {
    q.clear();
    r = a;
    return;
  }
  if (b.size() == 1) {
    std::uint64_t d = b[0], rem = 0;
    q.assign(a.size(), 0);
    for (std::size_t i = a.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | a[i];
      q[i] = static_cast<std::uint32_t>(cur / d);
      rem = cur % d;
    }
    while (!q.empty() && q.back() == 0) q.pop_back();
    r.clear();
    if (rem) r.push_back(static_cast<std::uint32_t>(rem));
    return;
  }

  // Normalize so the top divisor limb has its high bit set.
  unsigned shift = 0;
  for (std::uint32_t top = b.back(); !(top & 0x80000000u); top <<= 1) ++shift;
  std::vector<std::uint32_t> u = a, v = b;
  shl_bits(u, shift);
  shl_bits(v, shift);
  std::size_t n = v.size(), m = u.size() - n;
  u.resize(u.size() + 1, 0);
  q.assign(m + 1, 0);

  const std::uint64_t vtop = v[n - 1], vsec = v[n - 2];
  for (std::size_t j = m + 1; j-- > 0;) {
    std::uint64_t num = (static_cast<std::uint64_t>(u[j + n]) << 32) | u[j + n - 1];
    std::uint64_t qhat = num / vtop, rhat = num % vtop;
    while (qhat >= kBase || qhat * vsec > ((rhat << 32) | u[j + n - 2])) {
      --qhat;
      rhat += vtop;
      if (rhat >= kBase) break;
    }
    // u[j..j+n] -= qhat * v
    std::int64_t borrow = 0;
    std::uint64_t carry = 0;
    for (std::size_t i = 0; i < n; ++i) {
      std::uint64_t p = qhat * v[i] + carry;
      carry = p >> 32;
      std::int64_t t = static_cast<std::int64_t>(u[i + j]) - borrow -
                       static_cast<std::int64_t>(p & 0xffffffffu);
      if (t < 0) {
        t += static_cast<std::int64_t>(kBase);
        borrow = 1;
      } else {
        borrow = 0;
      }
      u[i + j] = static_cast<std::uint32_t>(t);
    }
    std::int64_t t = static_cast<std::int64_t>(u[j + n]) - borrow -
                     static_cast<std::int64_t>(carry);
    if (t < 0) {
      // qhat was one too large: add back.
      t += static_cast<std::int64_t>(kBase);
      --qhat;
      std::uint64_t c2 = 0;
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t s = static_cast<std::uint64_t>(u[i + j]) + v[i] + c2;
        u[i + j] = static_cast<std::uint32_t>(s & 0xffffffffu);
        c2 = s >> 32;
      }
      t += static_cast<std::int64_t>(c2);
      t &= 0xffffffffll;
    }
    u[j + n] = static_cast<std::uint32_t>(t);
    q[j] = static_cast<std::uint32_t>(qhat);
  }
  while (!q.empty() && q.back() == 0) q.pop_back();
  u.resize(n);
  shr_bits(u, shift);
  r = std::move(u);
}

BigInt BigInt::operator-() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  if (sign_ == 0) return o;
  if (o.sign_ == 0) return *this;
  BigInt r;
  if (sign_ == o.sign_) {
    r.mag_ = add_mag(mag_, o.mag_);
    r.sign_ = sign_;
  } else {
    int c = cmp_mag(mag_, o.mag_);
    if (c == 0) return r;
    if (c > 0) {
      r.mag_ = sub_mag(mag_, o.mag_);
      r.sign_ = sign_;
    } else {
      r.mag_ = sub_mag(o.mag_, mag_);
      r.sign_ = o.sign_;
    }
  }
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + (-o); }

BigInt BigInt::operator*(const BigInt& o) const {
  BigInt r;
  if (sign_ == 0 || o.sign_ == 0) return r;
  r.mag_ = mul_mag(mag_, o.mag_);
  r.sign_ = sign_ * o.sign_;
  return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  std::vector<std::uint32_t> qm, rm;
  divmod_mag(a.mag_, b.mag_, qm, rm);
  q.mag_ = std::move(qm);
  r.mag_ = std::move(rm);
  q.sign_ = q.mag_.empty() ? 0 : a.sign_ * b.sign_;
  r.sign_ = r.mag_.empty() ? 0 : a.sign_;
}

BigInt BigInt::operator/(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  return q;
}

BigInt BigInt::operator%(const BigInt& o) const {
  BigInt q, r;
  divmod(*this, o, q, r);
  return r;
}

BigInt BigInt::gcd(const BigInt& a, const BigInt& b) {
  // Binary gcd on magnitudes.
  std::vector<std::uint32_t> x = a.mag_, y = b.mag_;
  if (x.empty() || y.empty()) {
    BigInt g;
    g.mag_ = x.empty() ? y : x;
    g.sign_ = g.mag_.empty() ? 0 : 1;
    return g;
  }
  auto trailing = [](const std::vector<std::uint32_t>& v) {
    unsigned t = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] == 0) {
        t += 32;
        continue;
      }
      t += static_cast<unsigned>(__builtin_ctz(v[i]));
      break;
    }
    return t;
  };
  unsigned tx = trailing(x), ty = trailing(y);
  unsigned common = std::min(tx, ty);
  shr_bits(x, tx);
  shr_bits(y, ty);
  while (true) {
    int c = cmp_mag(x, y);
    if (c == 0) break;
    if (c < 0) std::swap(x, y);
    x = sub_mag(x, y);
    if (x.empty()) {
      x = y;
      break;
    }
    shr_bits(x, trailing(x));
  }
  shl_bits(x, common);
  BigInt g;
  g.mag_ = std::move(x);
  g.sign_ = g.mag_.empty() ? 0 : 1;
  return g;
}

BigInt BigInt::pow_u(const BigInt& base, unsigned e) {
  BigInt r(1), b = base;
  while (e) {
    if (e & 1u) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

bool BigInt::operator==(const BigInt& o) const {
  return sign_ == o.sign_ && mag_ == o.mag_;
}

int BigInt::cmp(const BigInt& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
  int c = cmp_mag(mag_, o.mag_);
  return sign_ >= 0 ? c : -c;
}

double BigInt::to_double() const {
  long e = 0;
  double m = to_double_exp(&e);
  return std::ldexp(m, static_cast<int>(e));
}

double BigInt::to_double_exp(long* exp2) const {
  // value = returned * 2^(*exp2); returned uses only the top ~3 limbs.
  if (sign_ == 0) {
    *exp2 = 0;
    return 0.0;
  }
  double r = 0.0;
  std::size_t lo = mag_.size() > 3 ? mag_.size() - 3 : 0;
  for (std::size_t i = mag_.size(); i-- > lo;) r = r * 4294967296.0 + mag_[i];
  *exp2 = static_cast<long>(32 * lo);
  return sign_ < 0 ? -r : r;
}

bool BigInt::fits_ll() const {
  if (mag_.size() > 2) return false;
  if (mag_.size() < 2) return true;
  std::uint64_t m = (static_cast<std::uint64_t>(mag_[1]) << 32) | mag_[0];
  return sign_ > 0 ? m <= 0x7fffffffffffffffull : m <= 0x8000000000000000ull;
}

long long BigInt::to_ll() const {
  if (!fits_ll()) throw std::overflow_error("BigInt: does not fit in long long");
  std::uint64_t m = 0;
  if (!mag_.empty()) m = mag_[0];
  if (mag_.size() == 2) m |= static_cast<std::uint64_t>(mag_[1]) << 32;
  return sign_ < 0 ? -static_cast<long long>(m) : static_cast<long long>(m);
}

std::string BigInt::to_string() const {
  if (sign_ == 0) return "0";
  std::vector<std::uint32_t> v = mag_;
  std::string digits;
  while (!v.empty()) {
    std::uint64_t rem = 0;
    for (std::size_t i = v.size(); i-- > 0;) {
      std::uint64_t cur = (rem << 32) | v[i];
      v[i] = static_cast<std::uint32_t>(cur / 1000000000u);
      rem = cur % 1000000000u;
    }
    while (!v.empty() && v.back() == 0) v.pop_back();
    for (int i = 0; i < 9; ++i) {
      digits.push_back(static_cast<char>('0' + rem % 10));
      rem /= 10;
    }
  }
  while (digits.size() > 1 && digits.back() == '0') digits.pop_back();
  if (sign_ < 0) digits.push_back('-');
  std::reverse(digits.begin(), digits.end());
  return digits;
}

std::size_t BigInt::bit_length() const {
  if (mag_.empty()) return 0;
  std::size_t bits = 32 * (mag_.size() - 1);
  std::uint32_t top = mag_.back();
  while (top) {
    ++bits;
    top >>= 1;
  }
  return bits;
}

BigRat::BigRat(BigInt n, BigInt d) : num_(std::move(n)), den_(std::move(d)) {
  if (den_.is_zero()) throw std::domain_error("BigRat: zero denominator");
  normalize();
}

void BigRat::normalize() {
  if (den_.sign() < 0) {
    num_ = -num_;
    den_ = -den_;
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  if (!(g == BigInt(1))) {
    num_ = num_ / g;
    den_ = den_ / g;
  }
}

BigRat BigRat::operator-() const {
  BigRat r = *this;
  r.num_ = -r.num_;
  return r;
}

BigRat BigRat::operator+(const BigRat& o) const {
  return BigRat(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

BigRat BigRat::operator-(const BigRat& o) const {
  return BigRat(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

BigRat BigRat::operator*(const BigRat& o) const {
  return BigRat(num_ * o.num_, den_ * o.den_);
}

BigRat BigRat::operator/(const BigRat& o) const {
  if (o.num_.is_zero()) throw std::domain_error("BigRat: division by zero");
  return BigRat(num_ * o.den_, den_ * o.num_);
}

bool BigRat::operator==(const BigRat& o) const {
  return num_ == o.num_ && den_ == o.den_;
}

int BigRat::cmp(const BigRat& o) const {
  return (num_ * o.den_).cmp(o.num_ * den_);
}

double BigRat::to_double() const {
  long en = 0, ed = 0;
  double n = num_.to_double_exp(&en);
  double d = den_.to_double_exp(&ed);
  long e = en - ed;
  if (e > 3000) return n > 0 ? HUGE_VAL : -HUGE_VAL;
  if (e < -3000) return 0.0;
  return std::ldexp(n / d, static_cast<int>(e));
}

std::string BigRat::to_string() const {
  if (den_ == BigInt(1)) return num_.to_string();
  return num_.to_string() + "/" + den_.to_string();
}

}  // namespace freeorder
