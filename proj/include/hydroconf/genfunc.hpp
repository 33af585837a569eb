#pragma once

#include <vector>

#include "hydroconf/exact.hpp"

namespace hydroconf {

/// Truncated power series in two variables with exact rational coefficients.
/// Index i is the sigma order, j the tau order; nothing beyond
/// (max_sigma, max_tau) is stored, and every operation truncates there.
class BivariateSeries {
 public:
  BivariateSeries(int max_sigma, int max_tau);
  static BivariateSeries constant(const Rational& value, int max_sigma, int max_tau);

  int max_sigma() const { return max_sigma_; }
  int max_tau() const { return max_tau_; }

  const Rational& at(int i, int j) const;
  Rational& at(int i, int j);

  BivariateSeries operator+(const BivariateSeries& other) const;
  BivariateSeries operator*(const BivariateSeries& other) const;
  BivariateSeries scaled(const Rational& factor) const;

  /// 1/F by the fixed-point recurrence on a unit-free constant term.
  /// Throws std::domain_error when the constant term is zero.
  BivariateSeries reciprocal() const;
  BivariateSeries pow(unsigned exponent) const;

  friend bool operator==(const BivariateSeries&, const BivariateSeries&);

 private:
  void check_shape(const BivariateSeries& other) const;

  int max_sigma_;
  int max_tau_;
  std::vector<Rational> coefficients_;  // row-major in sigma
};

/// Closed-form generating functional of <n_bra l| r^k |n_ket l>:
///
///   Z = 2^{2l+2} (n n')^{l+k+1} sqrt((n-l-1)!(n'-l-1)! / ((n+l)!(n'+l)!))
///       * (2l+k+2)! [(1-sigma)(1-tau)]^{k+1} / D^{2l+k+3},
///   D = (n+n')(1 - sigma tau) + (n'-n)(tau - sigma),
///
/// with sigma tracking the bra (n') Laguerre degree and tau the ket (n).
/// The matrix element is the coefficient of sigma^{n'-l-1} tau^{n-l-1}.
struct GfKernel {
  int n_bra = 1;
  int n_ket = 1;
  int l = 0;
  int k = 0;
  Rational prefactor;  // 2^{2l+2} (n n')^{l+k+1} (2l+k+2)!
  Rational radicand;   // under the square root

  static GfKernel make(int n_bra, int n_ket, int l, int k);
  int denominator_power() const { return 2 * l + k + 3; }
};

/// Series of the rational part of Z (the kernel radicand stays outside),
/// truncated at max_order in both variables.
BivariateSeries gf_series(const GfKernel& kernel, int max_order);

/// Same, truncated separately in each variable.
BivariateSeries gf_series(const GfKernel& kernel, int max_sigma, int max_tau);

/// Coefficient of sigma^i tau^j in (1 + c tau - c sigma - sigma tau)^{-p},
/// from the binomial expansion in tau followed by the one in sigma.
Rational gf_denominator_coefficient(const Rational& c, int p, int i, int j);

/// Matrix element <n_bra l| r^k |n_ket l> read off the generating functional.
/// Only the needed coefficient is expanded; gf_series gives the whole table.
Surd gf_matrix_element(int n_bra, int n_ket, int l, int k);

}  // namespace hydroconf
