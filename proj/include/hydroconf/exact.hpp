#pragma once

#include <gmpxx.h>

#include <string>
#include <string_view>

namespace hydroconf {

using Rational = mpq_class;
using Integer = mpz_class;

/// Parses "3", "-1/3", "0.25", "2e-6" or "-1.5E+2" into an exact rational.
/// Decimal notation is read as the decimal value, not its binary rounding.
Rational parse_rational(std::string_view text);

/// Exact value of a finite double (every finite double is a dyadic rational).
Rational rational_from_double(double value);

double to_double(const Rational& value);

/// Shortest decimal text for a rational: integer, "p/q", never lossy.
std::string to_string(const Rational& value);

/// n! as a big integer. The cache grows under a lock and is append-only,
/// so concurrent callers always observe the same values.
Integer factorial(unsigned n);

Integer binomial(unsigned n, unsigned k);

/// A real number of the form coefficient * sqrt(radicand) with both parts
/// rational and radicand >= 0. Hydrogenic matrix elements between different
/// principal quantum numbers carry such a square-root normalization.
///
/// Equality is exact: two surds are equal iff their signs and their squares
/// agree, which is independent of how the factors are split.
class Surd {
 public:
  Surd() = default;
  Surd(Rational coefficient, Rational radicand);
  explicit Surd(const Rational& value) : Surd(value, Rational(1)) {}

  const Rational& coefficient() const { return coefficient_; }
  const Rational& radicand() const { return radicand_; }

  int sign() const;
  Rational square() const { return coefficient_ * coefficient_ * radicand_; }
  bool is_rational() const;
  /// The value as a rational; throws std::domain_error if it is irrational.
  Rational rational_value() const;
  double to_double() const;

  Surd operator*(const Surd& other) const;
  Surd scaled(const Rational& factor) const;

  friend bool operator==(const Surd& a, const Surd& b);

 private:
  Rational coefficient_{0};
  Rational radicand_{1};
};

std::string to_string(const Surd& value);

}  // namespace hydroconf
