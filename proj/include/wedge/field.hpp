#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace wedge {

/// Exact rational scalars backed by GMP. mpq_class keeps every value
/// canonical (reduced fraction, positive denominator), so equality is
/// plain comparison.
class Rationals {
 public:
  using Elem = mpq_class;

  Elem zero() const { return Elem(0); }
  Elem one() const { return Elem(1); }
  Elem from_int(long v) const { return Elem(v); }

  bool is_zero(const Elem& a) const { return sgn(a) == 0; }
  bool is_one(const Elem& a) const { return a == 1; }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const { return a + b; }
  Elem sub(const Elem& a, const Elem& b) const { return a - b; }
  Elem mul(const Elem& a, const Elem& b) const { return a * b; }
  Elem neg(const Elem& a) const { return -a; }
  Elem inv(const Elem& a) const {
    if (is_zero(a)) throw std::domain_error("division by zero");
    return 1 / a;
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  /// a -= b*c, the inner-loop primitive of all elimination code.
  void submul(Elem& a, const Elem& b, const Elem& c) const { a -= b * c; }

  unsigned long characteristic() const { return 0; }
  std::string to_string(const Elem& a) const { return a.get_str(); }
  std::string name() const { return "QQ"; }
  bool operator==(const Rationals&) const { return true; }
};

/// F_p for a prime p < 2^32. Elements are least nonnegative residues
/// stored in 64 bits so products never overflow.
class PrimeField {
 public:
  using Elem = std::uint64_t;

  explicit PrimeField(std::uint64_t p) : p_(p) {
    if (p >= (std::uint64_t(1) << 32))
      throw std::invalid_argument("prime field modulus must be < 2^32");
    if (!is_prime(p))
      throw std::invalid_argument("modulus " + std::to_string(p) +
                                  " is not prime");
  }

  std::uint64_t modulus() const { return p_; }

  Elem zero() const { return 0; }
  Elem one() const { return 1 % p_; }
  Elem from_int(long v) const {
    long r = v % static_cast<long>(p_);
    if (r < 0) r += static_cast<long>(p_);
    return static_cast<Elem>(r);
  }

  bool is_zero(const Elem& a) const { return a == 0; }
  bool is_one(const Elem& a) const { return a == one(); }
  bool eq(const Elem& a, const Elem& b) const { return a == b; }

  Elem add(const Elem& a, const Elem& b) const {
    Elem s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Elem sub(const Elem& a, const Elem& b) const {
    return a >= b ? a - b : a + p_ - b;
  }
  Elem mul(const Elem& a, const Elem& b) const { return (a * b) % p_; }
  Elem neg(const Elem& a) const { return a == 0 ? 0 : p_ - a; }
  Elem inv(const Elem& a) const {
    if (a == 0) throw std::domain_error("division by zero");
    // extended Euclid on (a, p)
    std::int64_t t = 0, nt = 1;
    std::int64_t r = static_cast<std::int64_t>(p_),
                 nr = static_cast<std::int64_t>(a);
    while (nr != 0) {
      std::int64_t q = r / nr;
      std::int64_t tmp = t - q * nt;
      t = nt;
      nt = tmp;
      tmp = r - q * nr;
      r = nr;
      nr = tmp;
    }
    if (t < 0) t += static_cast<std::int64_t>(p_);
    return static_cast<Elem>(t);
  }
  Elem div(const Elem& a, const Elem& b) const { return mul(a, inv(b)); }
  void submul(Elem& a, const Elem& b, const Elem& c) const {
    a = sub(a, mul(b, c));
  }

  unsigned long characteristic() const { return p_; }
  std::string to_string(const Elem& a) const { return std::to_string(a); }
  std::string name() const { return "F" + std::to_string(p_); }
  bool operator==(const PrimeField& o) const { return p_ == o.p_; }

  static bool is_prime(std::uint64_t p) {
    if (p < 2) return false;
    for (std::uint64_t d = 2; d * d <= p; ++d)
      if (p % d == 0) return false;
    return true;
  }

 private:
  std::uint64_t p_;
};

}  // namespace wedge
