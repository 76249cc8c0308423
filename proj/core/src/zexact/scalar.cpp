#include "bvw/zexact/scalar.hpp"

#include "bvw/error.hpp"

#include <boost/integer/common_factor_rt.hpp>

namespace bvw {

namespace {

BigInt floor_mod(const BigInt& a, const BigInt& m) {
  BigInt r = a % m;
  if (r < 0) r += m;
  return r;
}

BigInt mod_inverse(const BigInt& a, const BigInt& p) {
  // Extended Euclid on (a mod p, p).
  BigInt old_r = floor_mod(a, p), r = p;
  BigInt old_s = 1, s = 0;
  while (r != 0) {
    BigInt q = old_r / r;
    BigInt t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  return floor_mod(old_s, p);
}

void reduce_fraction(Scalar& s) {
  if (s.den == 1) return;
  if (s.num == 0) {
    s.den = 1;
    return;
  }
  BigInt g = boost::multiprecision::gcd(s.num, s.den);
  if (g != 1) {
    s.num /= g;
    s.den /= g;
  }
  if (s.den < 0) {
    s.num = -s.num;
    s.den = -s.den;
  }
}

}  // namespace

std::string Scalar::str() const {
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  for (std::int64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

CoeffRing CoeffRing::prime_field(std::int64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::InvalidArgument, "characteristic " + std::to_string(p) + " is not prime");
  return CoeffRing(RingKind::PrimeField, p);
}

std::string CoeffRing::name() const {
  switch (kind_) {
    case RingKind::Integers: return "Z";
    case RingKind::Rationals: return "Q";
    case RingKind::PrimeField: return "F" + std::to_string(p_);
  }
  return "?";
}

Scalar CoeffRing::normalize(Scalar s) const {
  if (s.den == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator");
  switch (kind_) {
    case RingKind::Integers:
      if (s.den != 1) {
        reduce_fraction(s);
        if (s.den != 1) throw Error(ErrorKind::InvalidArgument, "non-integral value " + s.str() + " over Z");
      }
      return s;
    case RingKind::Rationals:
      reduce_fraction(s);
      return s;
    case RingKind::PrimeField: {
      BigInt p = p_;
      if (s.den != 1) {
        if (floor_mod(s.den, p) == 0)
          throw Error(ErrorKind::InvalidArgument, "denominator divisible by " + std::to_string(p_));
        s.num = s.num * mod_inverse(s.den, p);
        s.den = 1;
      }
      if (s.num < 0 || s.num >= p) s.num = floor_mod(s.num, p);
      return s;
    }
  }
  return s;
}

Scalar CoeffRing::add(const Scalar& a, const Scalar& b) const {
  if (a.den == 1 && b.den == 1) {
    Scalar r(a.num + b.num);
    if (kind_ == RingKind::PrimeField && (r.num >= p_ || r.num < 0)) r.num = floor_mod(r.num, p_);
    return r;
  }
  return normalize(Scalar(a.num * b.den + b.num * a.den, a.den * b.den));
}

Scalar CoeffRing::sub(const Scalar& a, const Scalar& b) const { return add(a, neg(b)); }

Scalar CoeffRing::mul(const Scalar& a, const Scalar& b) const {
  if (a.den == 1 && b.den == 1) {
    Scalar r(a.num * b.num);
    if (kind_ == RingKind::PrimeField && (r.num >= p_ || r.num < 0)) r.num = floor_mod(r.num, p_);
    return r;
  }
  return normalize(Scalar(a.num * b.num, a.den * b.den));
}

Scalar CoeffRing::neg(const Scalar& a) const {
  if (kind_ == RingKind::PrimeField) return a.num == 0 ? a : Scalar(BigInt(p_) - a.num);
  return Scalar(-a.num, a.den);
}

void CoeffRing::fma(Scalar& a, const Scalar& b, const Scalar& c) const {
  if (b.num == 0 || c.num == 0) return;
  if (a.den == 1 && b.den == 1 && c.den == 1) {
    a.num += b.num * c.num;
    if (kind_ == RingKind::PrimeField && (a.num >= p_ || a.num < 0)) a.num = floor_mod(a.num, p_);
    return;
  }
  a = add(a, mul(b, c));
}

std::optional<Scalar> CoeffRing::inverse(const Scalar& a) const {
  if (a.num == 0) return std::nullopt;
  switch (kind_) {
    case RingKind::Integers:
      if (a.num == 1 || a.num == -1) return a;
      return std::nullopt;
    case RingKind::Rationals:
      return normalize(Scalar(a.den, a.num));
    case RingKind::PrimeField:
      return Scalar(mod_inverse(a.num, p_));
  }
  return std::nullopt;
}

bool CoeffRing::is_unit(const Scalar& a) const { return inverse(a).has_value(); }

BigInt CoeffRing::norm(const Scalar& a) const {
  if (kind_ == RingKind::Integers) return abs(a.num);
  return a.num == 0 ? BigInt(0) : BigInt(1);
}

std::pair<Scalar, Scalar> CoeffRing::divmod(const Scalar& a, const Scalar& b) const {
  if (b.num == 0) throw Error(ErrorKind::InvalidArgument, "division by zero");
  if (kind_ == RingKind::Integers) {
    BigInt q = a.num / b.num;  // truncation keeps |r| < |b|
    return {Scalar(q), Scalar(a.num - q * b.num)};
  }
  return {mul(a, *inverse(b)), zero()};
}

bool CoeffRing::divides(const Scalar& a, const Scalar& b) const {
  if (a.num == 0) return b.num == 0;
  if (kind_ == RingKind::Integers) return b.num % a.num == 0;
  return true;
}

Scalar CoeffRing::unit_normal_factor(const Scalar& a) const {
  if (a.num == 0) return one();
  if (kind_ == RingKind::Integers) return a.num < 0 ? Scalar(-1) : Scalar(1);
  return *inverse(a);
}

Scalar parse_scalar(const std::string& text) {
  auto slash = text.find('/');
  try {
    if (slash == std::string::npos) return Scalar(BigInt(text));
    BigInt n(text.substr(0, slash));
    BigInt d(text.substr(slash + 1));
    if (d == 0) throw Error(ErrorKind::InvalidArgument, "zero denominator in " + text);
    Scalar s(n, d);
    return CoeffRing::rationals().normalize(s);
  } catch (const std::runtime_error& e) {
    if (dynamic_cast<const Error*>(&e)) throw;
    throw Error(ErrorKind::InvalidArgument, "malformed scalar '" + text + "'");
  }
}

}  // namespace bvw
