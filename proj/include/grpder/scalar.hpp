#pragma once

// Coefficient rings: the integers, the rationals and prime fields F_p.
//
// Every exact scalar is stored as a GMP rational; the Ring descriptor that
// travels with a container decides which values are legal and how results
// are reduced. Integers have denominator 1, F_p values are integers in [0, p).

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace grpder {

using Rational = mpq_class;
using Integer = mpz_class;

class Ring {
 public:
  enum class Kind { Integer, Rational, PrimeField };

  static Ring integers() { return Ring(Kind::Integer, 0); }
  static Ring rationals() { return Ring(Kind::Rational, 0); }
  /// Throws NotAField unless p is prime.
  static Ring prime_field(unsigned long p);

  Kind kind() const noexcept { return kind_; }
  unsigned long modulus() const noexcept { return p_; }
  bool is_field() const noexcept { return kind_ != Kind::Integer; }

  bool contains(const Rational& v) const;
  /// Maps a rational into this ring. Throws MixedRings when v has no image
  /// (non-integral value for Z, denominator divisible by p for F_p).
  Rational coerce(const Rational& v) const;
  /// Brings the result of a ring operation on members back into canonical form.
  void reduce(Rational& v) const {
    if (kind_ == Kind::PrimeField) reduce_mod(v);
  }
  /// Throws NotAField over Z, std::domain_error on zero.
  Rational inverse(const Rational& v) const;

  /// "Z", "Q" or "F<p>".
  std::string name() const;

  friend bool operator==(const Ring& a, const Ring& b) { return a.kind_ == b.kind_ && a.p_ == b.p_; }

 private:
  Ring(Kind k, unsigned long p) : kind_(k), p_(p) {}
  void reduce_mod(Rational& v) const;

  Kind kind_;
  unsigned long p_;
};

/// Parses "Z", "Q", "F<p>" (e.g. "F5").
Ring parse_ring(std::string_view name);

/// "3", "-1/2"
std::string to_string(const Rational& v);
/// Inverse of to_string; throws ParseError.
Rational parse_rational(std::string_view s);

}  // namespace grpder
