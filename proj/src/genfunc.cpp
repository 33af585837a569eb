#include "hydroconf/genfunc.hpp"

#include <stdexcept>

#include "hydroconf/basis.hpp"

namespace hydroconf {

BivariateSeries::BivariateSeries(int max_sigma, int max_tau)
    : max_sigma_(max_sigma),
      max_tau_(max_tau),
      coefficients_(static_cast<std::size_t>(max_sigma + 1) * static_cast<std::size_t>(max_tau + 1)) {
  if (max_sigma < 0 || max_tau < 0) throw std::invalid_argument("negative series order");
  for (auto& c : coefficients_) c = 0;
}

BivariateSeries BivariateSeries::constant(const Rational& value, int max_sigma, int max_tau) {
  BivariateSeries series(max_sigma, max_tau);
  series.at(0, 0) = value;
  return series;
}

const Rational& BivariateSeries::at(int i, int j) const {
  if (i < 0 || j < 0 || i > max_sigma_ || j > max_tau_) throw std::out_of_range("series index out of range");
  return coefficients_[static_cast<std::size_t>(i) * static_cast<std::size_t>(max_tau_ + 1) +
                       static_cast<std::size_t>(j)];
}

Rational& BivariateSeries::at(int i, int j) {
  return const_cast<Rational&>(std::as_const(*this).at(i, j));
}

void BivariateSeries::check_shape(const BivariateSeries& other) const {
  if (max_sigma_ != other.max_sigma_ || max_tau_ != other.max_tau_) {
    throw std::invalid_argument("series truncation orders differ");
  }
}

BivariateSeries BivariateSeries::operator+(const BivariateSeries& other) const {
  check_shape(other);
  BivariateSeries sum = *this;
  for (std::size_t idx = 0; idx < coefficients_.size(); ++idx) sum.coefficients_[idx] += other.coefficients_[idx];
  return sum;
}

BivariateSeries BivariateSeries::operator*(const BivariateSeries& other) const {
  check_shape(other);
  BivariateSeries product(max_sigma_, max_tau_);
  Rational term;
  for (int a = 0; a <= max_sigma_; ++a) {
    for (int b = 0; b <= max_tau_; ++b) {
      const Rational& left = at(a, b);
      if (sgn(left) == 0) continue;
      for (int c = 0; a + c <= max_sigma_; ++c) {
        for (int d = 0; b + d <= max_tau_; ++d) {
          const Rational& right = other.at(c, d);
          if (sgn(right) == 0) continue;
          term = left * right;
          product.at(a + c, b + d) += term;
        }
      }
    }
  }
  return product;
}

BivariateSeries BivariateSeries::scaled(const Rational& factor) const {
  BivariateSeries out = *this;
  for (auto& c : out.coefficients_) c *= factor;
  return out;
}

BivariateSeries BivariateSeries::reciprocal() const {
  const Rational& c0 = at(0, 0);
  if (sgn(c0) == 0) throw std::domain_error("series with zero constant term has no reciprocal");
  const Rational inv0 = 1 / c0;
  BivariateSeries inverse(max_sigma_, max_tau_);
  // sum_{a<=i, b<=j} F_{ab} G_{i-a,j-b} = delta_{i0} delta_{j0}
  for (int i = 0; i <= max_sigma_; ++i) {
    for (int j = 0; j <= max_tau_; ++j) {
      Rational acc = (i == 0 && j == 0) ? Rational(1) : Rational(0);
      for (int a = 0; a <= i; ++a) {
        for (int b = 0; b <= j; ++b) {
          if (a == 0 && b == 0) continue;
          const Rational& f = at(a, b);
          if (sgn(f) == 0) continue;
          acc -= f * inverse.at(i - a, j - b);
        }
      }
      inverse.at(i, j) = acc * inv0;
    }
  }
  return inverse;
}

BivariateSeries BivariateSeries::pow(unsigned exponent) const {
  BivariateSeries result = constant(1, max_sigma_, max_tau_);
  BivariateSeries base = *this;
  while (exponent > 0) {
    if (exponent & 1U) result = result * base;
    exponent >>= 1U;
    if (exponent > 0) base = base * base;
  }
  return result;
}

bool operator==(const BivariateSeries& a, const BivariateSeries& b) {
  return a.max_sigma_ == b.max_sigma_ && a.max_tau_ == b.max_tau_ && a.coefficients_ == b.coefficients_;
}

GfKernel GfKernel::make(int n_bra, int n_ket, int l, int k) {
  Orbital{n_bra, l}.validate();
  Orbital{n_ket, l}.validate();
  if (k < -1) throw std::invalid_argument("generating functional needs k >= -1");

  GfKernel kernel;
  kernel.n_bra = n_bra;
  kernel.n_ket = n_ket;
  kernel.l = l;
  kernel.k = k;

  Integer power_of_two;
  mpz_ui_pow_ui(power_of_two.get_mpz_t(), 2, static_cast<unsigned long>(2 * l + 2));
  Integer nn_power;
  mpz_ui_pow_ui(nn_power.get_mpz_t(), static_cast<unsigned long>(n_bra) * static_cast<unsigned long>(n_ket),
                static_cast<unsigned long>(l + k + 1));
  kernel.prefactor = Rational(power_of_two * nn_power * factorial(static_cast<unsigned>(2 * l + k + 2)));
  kernel.radicand = Rational(factorial(n_bra - l - 1) * factorial(n_ket - l - 1),
                             factorial(n_bra + l) * factorial(n_ket + l));
  kernel.radicand.canonicalize();
  return kernel;
}

BivariateSeries gf_series(const GfKernel& kernel, int max_order) {
  return gf_series(kernel, max_order, max_order);
}

BivariateSeries gf_series(const GfKernel& kernel, int max_sigma, int max_tau) {
  const int n = kernel.n_ket;
  const int np = kernel.n_bra;
  const int sum = n + np;

  // D/(n+n') = 1 + c tau - c sigma - sigma tau, c = (n'-n)/(n+n')
  Rational c(np - n, sum);
  c.canonicalize();
  BivariateSeries unit_d(max_sigma, max_tau);
  unit_d.at(0, 0) = 1;
  if (max_tau >= 1) unit_d.at(0, 1) = c;
  if (max_sigma >= 1) unit_d.at(1, 0) = -c;
  if (max_sigma >= 1 && max_tau >= 1) unit_d.at(1, 1) = -1;

  const int p = kernel.denominator_power();
  BivariateSeries series = unit_d.reciprocal().pow(static_cast<unsigned>(p));

  // [(1-sigma)(1-tau)]^{k+1} is separable: multiply by binomial rows/columns.
  const int e = kernel.k + 1;
  if (e > 0) {
    BivariateSeries numerator(max_sigma, max_tau);
    for (int i = 0; i <= std::min(e, max_sigma); ++i) {
      for (int j = 0; j <= std::min(e, max_tau); ++j) {
        Rational v(binomial(static_cast<unsigned>(e), static_cast<unsigned>(i)) *
                   binomial(static_cast<unsigned>(e), static_cast<unsigned>(j)));
        numerator.at(i, j) = ((i + j) % 2 == 0) ? v : Rational(-v);
      }
    }
    series = series * numerator;
  }

  Integer sum_power;
  mpz_ui_pow_ui(sum_power.get_mpz_t(), static_cast<unsigned long>(sum), static_cast<unsigned long>(p));
  return series.scaled(Rational(kernel.prefactor / Rational(sum_power)));
}

Rational gf_denominator_coefficient(const Rational& c, int p, int i, int j) {
  // (1 - c sigma + tau (c - sigma))^{-p}
  //   = sum_j (-1)^j C(p+j-1, j) tau^j (c - sigma)^j (1 - c sigma)^{-p-j}
  Rational total = 0;
  Rational c_power;
  for (int m = 0; m <= std::min(i, j); ++m) {
    mpq_class term(binomial(static_cast<unsigned>(j), static_cast<unsigned>(m)) *
                   binomial(static_cast<unsigned>(p + j + i - m - 1), static_cast<unsigned>(i - m)));
    mpz_pow_ui(c_power.get_num_mpz_t(), c.get_num_mpz_t(), static_cast<unsigned long>(i + j - 2 * m));
    mpz_pow_ui(c_power.get_den_mpz_t(), c.get_den_mpz_t(), static_cast<unsigned long>(i + j - 2 * m));
    term *= c_power;
    if (m % 2 == 0) {
      total += term;
    } else {
      total -= term;
    }
  }
  Rational lead(binomial(static_cast<unsigned>(p + j - 1), static_cast<unsigned>(j)));
  total *= lead;
  if (j % 2 != 0) total = -total;
  return total;
}

Surd gf_matrix_element(int n_bra, int n_ket, int l, int k) {
  const GfKernel kernel = GfKernel::make(n_bra, n_ket, l, k);
  const int a = n_bra - l - 1;
  const int b = n_ket - l - 1;
  const int sum = n_bra + n_ket;
  const int p = kernel.denominator_power();
  Rational c(n_bra - n_ket, sum);
  c.canonicalize();

  // Only the (a, b) coefficient is needed, so the separable numerator
  // [(1-sigma)(1-tau)]^{k+1} is folded in as a finite convolution.
  const int e = kernel.k + 1;
  Rational coefficient = 0;
  for (int i = 0; i <= std::min(e, a); ++i) {
    for (int j = 0; j <= std::min(e, b); ++j) {
      Rational weight(binomial(static_cast<unsigned>(e), static_cast<unsigned>(i)) *
                      binomial(static_cast<unsigned>(e), static_cast<unsigned>(j)));
      if ((i + j) % 2 != 0) weight = -weight;
      coefficient += weight * gf_denominator_coefficient(c, p, a - i, b - j);
    }
  }

  Integer sum_power;
  mpz_ui_pow_ui(sum_power.get_mpz_t(), static_cast<unsigned long>(sum), static_cast<unsigned long>(p));
  coefficient *= kernel.prefactor / Rational(sum_power);
  return Surd(coefficient, kernel.radicand);
}

}  // namespace hydroconf
