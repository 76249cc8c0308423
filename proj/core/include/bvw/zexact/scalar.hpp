#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <optional>
#include <string>

namespace bvw {

using BigInt = boost::multiprecision::cpp_int;

// Exact scalar. Integers and prime-field residues keep den == 1; rationals
// are stored in lowest terms with a positive denominator.
struct Scalar {
  BigInt num{0};
  BigInt den{1};

  Scalar() = default;
  Scalar(long long n) : num(n) {}  // NOLINT(google-explicit-constructor)
  Scalar(BigInt n) : num(std::move(n)) {}  // NOLINT(google-explicit-constructor)
  Scalar(BigInt n, BigInt d) : num(std::move(n)), den(std::move(d)) {}

  bool is_zero() const { return num == 0; }
  bool is_integral() const { return den == 1; }

  friend bool operator==(const Scalar& a, const Scalar& b) {
    return a.num == b.num && a.den == b.den;
  }

  std::string str() const;
};

enum class RingKind { Integers, Rationals, PrimeField };

class CoeffRing {
 public:
  static CoeffRing integers() { return CoeffRing(RingKind::Integers, 0); }
  static CoeffRing rationals() { return CoeffRing(RingKind::Rationals, 0); }
  static CoeffRing prime_field(std::int64_t p);

  RingKind kind() const { return kind_; }
  std::int64_t characteristic() const { return p_; }
  bool is_field() const { return kind_ != RingKind::Integers; }
  std::string name() const;

  Scalar zero() const { return Scalar{}; }
  Scalar one() const { return Scalar{1}; }
  Scalar from_int(const BigInt& n) const { return normalize(Scalar{n}); }

  // Brings an arbitrary exact value into canonical form for this ring.
  // Fails for non-integral values over Z, and for denominators divisible by p.
  Scalar normalize(Scalar s) const;

  Scalar add(const Scalar& a, const Scalar& b) const;
  Scalar sub(const Scalar& a, const Scalar& b) const;
  Scalar mul(const Scalar& a, const Scalar& b) const;
  Scalar neg(const Scalar& a) const;
  std::optional<Scalar> inverse(const Scalar& a) const;
  bool is_unit(const Scalar& a) const;

  // a += b * c, in place.
  void fma(Scalar& a, const Scalar& b, const Scalar& c) const;

  // Euclidean structure: norm (|a| over Z, 0/1 over fields) and division
  // with remainder so that norm(r) < norm(b).
  BigInt norm(const Scalar& a) const;
  std::pair<Scalar, Scalar> divmod(const Scalar& a, const Scalar& b) const;
  bool divides(const Scalar& a, const Scalar& b) const;
  // Canonical associate: |a| over Z, 1 over fields for nonzero a.
  Scalar unit_normal_factor(const Scalar& a) const;

  friend bool operator==(const CoeffRing& a, const CoeffRing& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }

 private:
  CoeffRing(RingKind kind, std::int64_t p) : kind_(kind), p_(p) {}

  RingKind kind_;
  std::int64_t p_;
};

bool is_prime(std::int64_t n);

// Parses "3", "-7", "2/3".
Scalar parse_scalar(const std::string& text);

}  // namespace bvw
