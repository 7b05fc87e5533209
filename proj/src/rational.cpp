#include "rational.hpp"

#include <cctype>

namespace rosa {

Rat::Rat(long n, long d) {
  if (d == 0) throw Error(Error::Kind::Parameter, "rational with zero denominator");
  v_ = mpq_class(n, d);
  v_.canonicalize();
}

Rat Rat::from_mpq(mpq_class q) {
  Rat r;
  r.v_ = std::move(q);
  return r;
}

Rat Rat::from_mpz(const mpz_class& z) {
  Rat r;
  r.v_ = mpq_class(z);
  return r;
}

Rat Rat::from_u64(std::uint64_t u) {
  mpz_class z;
  mpz_import(z.get_mpz_t(), 1, 1, sizeof(u), 0, 0, &u);
  return from_mpz(z);
}

Rat Rat::parse(const std::string& s) {
  // Accepted: -?digits or -?digits/digits with a nonzero denominator.
  auto fail = [&](const char* why) -> Rat {
    throw Error(Error::Kind::Parse, "bad rational \"" + s + "\": " + why);
  };
  if (s.empty()) fail("empty string");
  std::size_t i = 0;
  if (s[i] == '-') ++i;
  std::size_t num_begin = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  if (i == num_begin) fail("expected digits");
  std::string num = s.substr(0, i);
  std::string den = "1";
  if (i < s.size()) {
    if (s[i] != '/') fail("only \"p\" or \"p/q\" forms are accepted");
    std::size_t den_begin = ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == den_begin || i != s.size()) fail("bad denominator");
    den = s.substr(den_begin);
  }
  mpz_class zn(num), zd(den);
  if (zd == 0) fail("zero denominator");
  mpq_class q(zn, zd);
  q.canonicalize();
  return from_mpq(std::move(q));
}

Rat Rat::operator/(const Rat& o) const {
  if (o.is_zero()) throw Error(Error::Kind::Parameter, "division by zero");
  return from_mpq(mpq_class(v_ / o.v_));
}

Rat floor_power(const Rat& base, const Rat& x) {
  if (!(base > Rat(1))) throw Error(Error::Kind::Parameter, "floor_power base must exceed 1");
  if (x.sign() <= 0) throw Error(Error::Kind::Parameter, "floor_power argument must be positive");
  Rat p(1);
  if (x >= Rat(1)) {
    while (p * base <= x) p *= base;
  } else {
    while (p > x) p /= base;
  }
  return p;
}

Rat ceil_power(const Rat& base, const Rat& x) {
  if (!(base > Rat(1))) throw Error(Error::Kind::Parameter, "ceil_power base must exceed 1");
  if (x.sign() <= 0) throw Error(Error::Kind::Parameter, "ceil_power argument must be positive");
  Rat p(1);
  if (x <= Rat(1)) {
    while (p / base >= x) p /= base;
  } else {
    while (p < x) p *= base;
  }
  return p;
}

long ceil_sqrt(long n) {
  if (n < 0) throw Error(Error::Kind::Parameter, "ceil_sqrt of negative");
  long r = 0;
  while (r * r < n) ++r;
  return r;
}

}  // namespace rosa
