#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "error.hpp"

namespace rosa {

// Exact rational number: a thin value-type facade over GMP's mpq_class that
// keeps every value canonicalized and pins the repo-wide string format,
// "p/q" with q > 0 or plain "p" for integers. Decimal strings are rejected
// on parse because they are lossy.
class Rat {
 public:
  Rat() : v_(0) {}
  Rat(long n) : v_(n) {}  // NOLINT: implicit by design, Rat(3) reads naturally
  Rat(long n, long d);

  static Rat parse(const std::string& s);
  static Rat from_mpq(mpq_class q);
  static Rat from_mpz(const mpz_class& z);
  static Rat from_u64(std::uint64_t u);

  std::string str() const { return v_.get_str(); }
  double approx() const { return v_.get_d(); }

  const mpq_class& raw() const { return v_; }
  mpz_class numerator() const { return v_.get_num(); }
  mpz_class denominator() const { return v_.get_den(); }

  int sign() const { return sgn(v_); }
  bool is_zero() const { return sgn(v_) == 0; }
  bool is_integer() const { return v_.get_den() == 1; }

  Rat operator-() const { return from_mpq(mpq_class(-v_)); }
  Rat operator+(const Rat& o) const { return from_mpq(mpq_class(v_ + o.v_)); }
  Rat operator-(const Rat& o) const { return from_mpq(mpq_class(v_ - o.v_)); }
  Rat operator*(const Rat& o) const { return from_mpq(mpq_class(v_ * o.v_)); }
  Rat operator/(const Rat& o) const;

  Rat& operator+=(const Rat& o) { v_ += o.v_; return *this; }
  Rat& operator-=(const Rat& o) { v_ -= o.v_; return *this; }
  Rat& operator*=(const Rat& o) { v_ *= o.v_; return *this; }
  Rat& operator/=(const Rat& o) { *this = *this / o; return *this; }

  bool operator==(const Rat& o) const { return cmp(v_, o.v_) == 0; }
  bool operator!=(const Rat& o) const { return cmp(v_, o.v_) != 0; }
  bool operator<(const Rat& o) const { return cmp(v_, o.v_) < 0; }
  bool operator<=(const Rat& o) const { return cmp(v_, o.v_) <= 0; }
  bool operator>(const Rat& o) const { return cmp(v_, o.v_) > 0; }
  bool operator>=(const Rat& o) const { return cmp(v_, o.v_) >= 0; }

  Rat abs() const { return sign() < 0 ? -*this : *this; }

  static Rat min(const Rat& a, const Rat& b) { return b < a ? b : a; }
  static Rat max(const Rat& a, const Rat& b) { return a < b ? b : a; }

 private:
  mpq_class v_;
};

// Largest power base^e (e may be negative) with base^e <= x.
// Requires base > 1 and x > 0. Detects exact powers by construction: if x is
// itself a power of base, that power is returned unchanged.
Rat floor_power(const Rat& base, const Rat& x);

// Smallest power base^e with base^e >= x. Requires base > 1 and x > 0.
Rat ceil_power(const Rat& base, const Rat& x);

// ceil(sqrt(n)) over nonnegative integers.
long ceil_sqrt(long n);

}  // namespace rosa
