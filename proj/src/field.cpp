#include "koszulkit/field.hpp"

namespace koszulkit {

bool is_prime_int(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

FieldSpec FieldSpec::prime(std::int64_t p) {
  if (p >= (std::int64_t(1) << 31))
    throw std::invalid_argument("prime field characteristic must be < 2^31");
  if (!is_prime_int(p))
    throw std::invalid_argument("not a prime: " + std::to_string(p));
  FieldSpec f;
  f.p = p;
  return f;
}

std::string FieldSpec::describe() const {
  return is_rationals() ? "Q" : ("F" + std::to_string(p));
}

namespace {

std::int64_t mod_pos(std::int64_t a, std::int64_t p) {
  std::int64_t r = a % p;
  return r < 0 ? r + p : r;
}

std::int64_t inv_mod(std::int64_t a, std::int64_t p) {
  // extended Euclid; a must be nonzero mod p
  std::int64_t t = 0, newt = 1, r = p, newr = mod_pos(a, p);
  while (newr != 0) {
    std::int64_t q = r / newr;
    std::int64_t tmp = t - q * newt;
    t = newt;
    newt = tmp;
    tmp = r - q * newr;
    r = newr;
    newr = tmp;
  }
  if (r != 1) throw std::domain_error("not invertible mod p");
  return mod_pos(t, p);
}

std::int64_t residue_of(const Rational& x, std::int64_t p) {
  // x is assumed canonical over F_p: an integer in [0, p)
  return static_cast<std::int64_t>(boost::multiprecision::numerator(x));
}

}  // namespace

Rational Field::canon(const Rational& x) const {
  if (spec_.is_rationals()) return x;  // cpp_rational keeps lowest terms
  const auto p = spec_.p;
  boost::multiprecision::cpp_int num = boost::multiprecision::numerator(x);
  boost::multiprecision::cpp_int den = boost::multiprecision::denominator(x);
  std::int64_t n = static_cast<std::int64_t>(num % p);
  std::int64_t d = static_cast<std::int64_t>(den % p);
  if (d == 0) throw std::domain_error("denominator divisible by p");
  std::int64_t r = mod_pos(n, p);
  if (d != 1) r = mod_pos(r * inv_mod(d, p), p);
  return Rational(r);
}

Rational Field::add(const Rational& a, const Rational& b) const {
  if (spec_.is_rationals()) return a + b;
  return Rational(mod_pos(residue_of(a, spec_.p) + residue_of(b, spec_.p), spec_.p));
}

Rational Field::sub(const Rational& a, const Rational& b) const {
  if (spec_.is_rationals()) return a - b;
  return Rational(mod_pos(residue_of(a, spec_.p) - residue_of(b, spec_.p), spec_.p));
}

Rational Field::mul(const Rational& a, const Rational& b) const {
  if (spec_.is_rationals()) return a * b;
  return Rational(mod_pos(residue_of(a, spec_.p) * residue_of(b, spec_.p), spec_.p));
}

Rational Field::neg(const Rational& a) const {
  if (spec_.is_rationals()) return -a;
  return Rational(mod_pos(-residue_of(a, spec_.p), spec_.p));
}

Rational Field::inv(const Rational& a) const {
  if (a == 0) throw std::domain_error("division by zero");
  if (spec_.is_rationals()) return 1 / a;
  return Rational(inv_mod(residue_of(a, spec_.p), spec_.p));
}

Rational Field::div(const Rational& a, const Rational& b) const {
  return mul(a, inv(b));
}

Rational Field::parse(const std::string& s) const {
  try {
    return canon(Rational(s));
  } catch (const std::exception&) {
    throw std::invalid_argument("bad scalar literal: " + s);
  }
}

std::string Field::to_string(const Rational& x) { return x.str(); }

}  // namespace koszulkit
