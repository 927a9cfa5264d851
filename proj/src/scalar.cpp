#include "grpder/scalar.hpp"

#include <stdexcept>

#include "grpder/errors.hpp"

namespace grpder {

Ring Ring::prime_field(unsigned long p) {
  if (p < 2 || mpz_probab_prime_p(Integer(p).get_mpz_t(), 30) == 0)
    throw NotAField("F_p requires a prime modulus, got " + std::to_string(p));
  return Ring(Kind::PrimeField, p);
}

bool Ring::contains(const Rational& v) const {
  switch (kind_) {
    case Kind::Rational: return true;
    case Kind::Integer: return v.get_den() == 1;
    case Kind::PrimeField: return v.get_den() == 1 && v >= 0 && v < p_;
  }
  return false;
}

void Ring::reduce_mod(Rational& v) const {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_num_mpz_t(), p_);
  v = r;
}

Rational Ring::coerce(const Rational& v) const {
  switch (kind_) {
    case Kind::Rational: return v;
    case Kind::Integer:
      if (v.get_den() != 1) throw MixedRings("value " + to_string(v) + " is not an integer");
      return v;
    case Kind::PrimeField: {
      Integer den = v.get_den(), inv;
      if (mpz_invert(inv.get_mpz_t(), den.get_mpz_t(), Integer(p_).get_mpz_t()) == 0)
        throw MixedRings("value " + to_string(v) + " has no image in " + name());
      Rational r(Integer(v.get_num() * inv));
      reduce_mod(r);
      return r;
    }
  }
  return v;
}

Rational Ring::inverse(const Rational& v) const {
  if (kind_ == Kind::Integer) throw NotAField("division requires a field, ring is Z");
  if (v == 0) throw std::domain_error("inverse of zero");
  if (kind_ == Kind::Rational) return 1 / v;
  Integer inv;
  mpz_invert(inv.get_mpz_t(), v.get_num_mpz_t(), Integer(p_).get_mpz_t());
  return Rational(inv);
}

std::string Ring::name() const {
  switch (kind_) {
    case Kind::Integer: return "Z";
    case Kind::Rational: return "Q";
    case Kind::PrimeField: return "F" + std::to_string(p_);
  }
  return "?";
}

Ring parse_ring(std::string_view name) {
  if (name == "Z") return Ring::integers();
  if (name == "Q") return Ring::rationals();
  if (name.size() > 1 && name[0] == 'F') {
    unsigned long p = 0;
    for (char c : name.substr(1)) {
      if (c < '0' || c > '9' || p > 1'000'000'000UL) throw ParseError("bad ring name '" + std::string(name) + "'");
      p = p * 10 + static_cast<unsigned long>(c - '0');
    }
    return Ring::prime_field(p);
  }
  throw ParseError("bad ring name '" + std::string(name) + "'");
}

std::string to_string(const Rational& v) {
  Rational c = v;
  c.canonicalize();
  return c.get_str();
}

Rational parse_rational(std::string_view s) {
  auto valid_int = [](std::string_view t) {
    if (!t.empty() && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    if (t.empty()) return false;
    for (char c : t)
      if (c < '0' || c > '9') return false;
    return true;
  };
  auto slash = s.find('/');
  std::string_view num = s.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : s.substr(slash + 1);
  if (!valid_int(num) || (slash != std::string_view::npos && !valid_int(den)))
    throw ParseError("bad rational '" + std::string(s) + "'");
  auto strip_plus = [](std::string_view t) { return std::string(t.size() && t[0] == '+' ? t.substr(1) : t); };
  Rational r;
  r.get_num() = Integer(strip_plus(num));
  r.get_den() = slash == std::string_view::npos ? Integer(1) : Integer(strip_plus(den));
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(s) + "'");
  r.canonicalize();
  return r;
}

}  // namespace grpder
