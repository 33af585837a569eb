#include "hydroconf/exact.hpp"

#include <cctype>
#include <cmath>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace hydroconf {

namespace {

Integer pow10(unsigned exponent) {
  Integer result;
  mpz_ui_pow_ui(result.get_mpz_t(), 10, exponent);
  return result;
}

bool is_digits(std::string_view text) {
  if (text.empty()) return false;
  for (char c : text) {
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  }
  return true;
}

[[noreturn]] void bad_number(std::string_view text) {
  throw std::invalid_argument("not a rational number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.front()))) text.remove_prefix(1);
  while (!text.empty() && std::isspace(static_cast<unsigned char>(text.back()))) text.remove_suffix(1);
  if (text.empty()) bad_number(text);

  const std::string_view original = text;
  bool negative = false;
  if (text.front() == '+' || text.front() == '-') {
    negative = text.front() == '-';
    text.remove_prefix(1);
  }

  Rational result;
  if (auto slash = text.find('/'); slash != std::string_view::npos) {
    auto num = text.substr(0, slash);
    auto den = text.substr(slash + 1);
    if (!is_digits(num) || !is_digits(den)) bad_number(original);
    Integer d{std::string(den), 10};
    if (d == 0) throw std::invalid_argument("zero denominator in '" + std::string(original) + "'");
    result = Rational(Integer(std::string(num), 10), d);
    result.canonicalize();
  } else {
    long exponent = 0;
    if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
      auto exp_text = text.substr(e + 1);
      bool exp_negative = false;
      if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
        exp_negative = exp_text.front() == '-';
        exp_text.remove_prefix(1);
      }
      if (!is_digits(exp_text) || exp_text.size() > 6) bad_number(original);
      exponent = std::stol(std::string(exp_text));
      if (exp_negative) exponent = -exponent;
      text = text.substr(0, e);
    }
    std::string digits;
    if (auto dot = text.find('.'); dot != std::string_view::npos) {
      auto whole = text.substr(0, dot);
      auto frac = text.substr(dot + 1);
      if ((!whole.empty() && !is_digits(whole)) || (!frac.empty() && !is_digits(frac)) ||
          (whole.empty() && frac.empty())) {
        bad_number(original);
      }
      digits = std::string(whole) + std::string(frac);
      exponent -= static_cast<long>(frac.size());
    } else {
      if (!is_digits(text)) bad_number(original);
      digits = std::string(text);
    }
    Integer mantissa(digits, 10);
    if (exponent >= 0) {
      result = Rational(mantissa * pow10(static_cast<unsigned>(exponent)));
    } else {
      result = Rational(mantissa, pow10(static_cast<unsigned>(-exponent)));
      result.canonicalize();
    }
  }
  return negative ? Rational(-result) : result;
}

Rational rational_from_double(double value) {
  if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no rational form");
  return Rational(value);
}

double to_double(const Rational& value) { return value.get_d(); }

std::string to_string(const Rational& value) { return value.get_str(); }

Integer factorial(unsigned n) {
  static std::mutex mutex;
  static std::vector<Integer> cache{Integer(1)};
  std::lock_guard lock(mutex);
  while (cache.size() <= n) {
    cache.push_back(cache.back() * static_cast<unsigned long>(cache.size()));
  }
  return cache[n];
}

Integer binomial(unsigned n, unsigned k) {
  if (k > n) return 0;
  Integer result;
  mpz_bin_uiui(result.get_mpz_t(), n, k);
  return result;
}

Surd::Surd(Rational coefficient, Rational radicand)
    : coefficient_(std::move(coefficient)), radicand_(std::move(radicand)) {
  coefficient_.canonicalize();
  radicand_.canonicalize();
  if (sgn(radicand_) < 0) throw std::invalid_argument("surd radicand must be non-negative");
  if (sgn(coefficient_) == 0 || sgn(radicand_) == 0) {
    coefficient_ = 0;
    radicand_ = 1;
  }
}

int Surd::sign() const { return sgn(coefficient_); }

bool Surd::is_rational() const {
  return mpz_perfect_square_p(radicand_.get_num_mpz_t()) &&
         mpz_perfect_square_p(radicand_.get_den_mpz_t());
}

Rational Surd::rational_value() const {
  if (!is_rational()) throw std::domain_error("surd is irrational: " + to_string(*this));
  Integer num, den;
  mpz_sqrt(num.get_mpz_t(), radicand_.get_num_mpz_t());
  mpz_sqrt(den.get_mpz_t(), radicand_.get_den_mpz_t());
  Rational root(num, den);
  return Rational(coefficient_ * root);
}

double Surd::to_double() const { return coefficient_.get_d() * std::sqrt(radicand_.get_d()); }

Surd Surd::operator*(const Surd& other) const {
  return Surd(coefficient_ * other.coefficient_, radicand_ * other.radicand_);
}

Surd Surd::scaled(const Rational& factor) const { return Surd(coefficient_ * factor, radicand_); }

bool operator==(const Surd& a, const Surd& b) {
  return a.sign() == b.sign() && a.square() == b.square();
}

std::string to_string(const Surd& value) {
  if (value.is_rational()) return to_string(value.rational_value());
  return to_string(value.coefficient()) + "*sqrt(" + to_string(value.radicand()) + ")";
}

}  // namespace hydroconf
