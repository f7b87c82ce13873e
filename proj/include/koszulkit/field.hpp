#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <stdexcept>
#include <string>

namespace koszulkit {

using Rational = boost::multiprecision::cpp_rational;

/// Exact scalar domain: the rationals, or a prime field F_p with p < 2^31.
/// Scalars are held as Rational in both cases; over F_p every canonical
/// scalar is an integer in [0, p).
struct FieldSpec {
  std::int64_t p = 0;  // 0 means the rationals

  static FieldSpec rationals() { return FieldSpec{}; }
  static FieldSpec prime(std::int64_t p);

  bool is_rationals() const { return p == 0; }
  bool operator==(const FieldSpec&) const = default;

  std::string describe() const;
};

bool is_prime_int(std::int64_t n);

/// Scalar arithmetic bound to a FieldSpec. All results are canonical:
/// lowest terms over Q, least nonnegative residue over F_p.
class Field {
 public:
  explicit Field(FieldSpec spec) : spec_(spec) {}

  const FieldSpec& spec() const { return spec_; }

  Rational canon(const Rational& x) const;
  Rational add(const Rational& a, const Rational& b) const;
  Rational sub(const Rational& a, const Rational& b) const;
  Rational mul(const Rational& a, const Rational& b) const;
  Rational neg(const Rational& a) const;
  Rational inv(const Rational& a) const;
  Rational div(const Rational& a, const Rational& b) const;
  bool is_zero(const Rational& a) const { return a == 0; }

  /// Parses "3/7", "-2" or a residue; canonicalizes.
  Rational parse(const std::string& s) const;
  static std::string to_string(const Rational& x);

 private:
  FieldSpec spec_;
};

}  // namespace koszulkit
