#include "hydroconf/potential.hpp"

#include <cmath>
#include <stdexcept>

namespace hydroconf {

double atom_level(int n, EnergyConvention convention) {
  return -convention_scale(convention) / (2.0 * n * n);
}

Rational atom_level_exact(int n, EnergyConvention convention) {
  const long denom = static_cast<long>(n) * n;
  return convention == EnergyConvention::TableRydberg ? Rational(-1, denom) : Rational(-1, 2 * denom);
}

double convention_scale(EnergyConvention convention) {
  return convention == EnergyConvention::TableRydberg ? 2.0 : 1.0;
}

std::string to_string(EnergyConvention convention) {
  return convention == EnergyConvention::TableRydberg ? "rydberg" : "hartree";
}

EnergyConvention parse_convention(const std::string& text) {
  if (text == "rydberg" || text == "table") return EnergyConvention::TableRydberg;
  if (text == "hartree") return EnergyConvention::Hartree;
  throw std::invalid_argument("unknown energy convention '" + text + "'");
}

void ConfinementSpec::validate() const {
  if (const auto* pgo = std::get_if<PgoParams>(&kind)) {
    if (pgo->order < 1) throw std::invalid_argument("PGO order must be >= 1");
    if (sgn(pgo->mu) <= 0) throw std::invalid_argument("PGO mu must be positive");
  }
  if (const auto* ho = std::get_if<HoParams>(&kind)) {
    if (sgn(ho->c2) < 0) throw std::invalid_argument("HO coefficient must be non-negative");
  }
  if (hard_wall && !(*hard_wall > 1.0)) {
    throw std::invalid_argument("hard-wall radius must exceed one Bohr radius");
  }
}

double PowerSeriesPotential::evaluate(double r) const {
  double sum = 0.0;
  for (const auto& term : terms) sum += term.value() * std::pow(r, term.power);
  return sum;
}

Rational PowerSeriesPotential::coefficient(int power) const {
  for (const auto& term : terms) {
    if (term.power == power) return term.coefficient;
  }
  return 0;
}

PowerSeriesPotential PowerSeriesPotential::scaled(const Rational& factor) const {
  PowerSeriesPotential out = *this;
  for (auto& term : out.terms) term.coefficient *= factor;
  return out;
}

double pgo_value(const PgoParams& params, double r) {
  const double mu = to_double(params.mu);
  const double x = mu * r * r;
  // C_k r^{2k} = (lambda + k) x^k / k!
  double poly = to_double(params.lambda);
  double power = 1.0;
  for (int k = 1; k <= params.order; ++k) {
    power *= x / k;
    poly += (to_double(params.lambda) + k) * power;
  }
  return poly * std::exp(-x);
}

Rational pgo_polynomial_coefficient(const PgoParams& params, int k) {
  if (k == 0) return params.lambda;
  Rational mu_power = 1;
  for (int i = 0; i < k; ++i) mu_power *= params.mu;
  return Rational((params.lambda + k) * mu_power / Rational(factorial(k)));
}

Rational pgo_taylor_coefficient(const PgoParams& params, int m) {
  if (m < 0) throw std::invalid_argument("negative Taylor index");
  Rational sum = 0;
  for (int k = 0; k <= std::min(m, params.order); ++k) {
    Rational term = pgo_polynomial_coefficient(params, k);
    for (int i = 0; i < m - k; ++i) term *= -params.mu;
    term /= Rational(factorial(m - k));
    sum += term;
  }
  return sum;
}

double truncation_radius(int l_max, int basis_size) {
  const double scale = static_cast<double>(l_max + basis_size);
  return 2.0 * scale * scale;
}

PowerSeriesPotential taylor_coefficients(const ConfinementSpec& spec, int max_power, double tol,
                                         double r_max) {
  if (max_power < 2) throw std::invalid_argument("max_power must be at least 2");
  if (!(tol > 0.0)) throw std::invalid_argument("truncation tolerance must be positive");
  spec.validate();

  PowerSeriesPotential series;
  series.truncation_tol = tol;
  series.r_max_bound = r_max;

  if (const auto* ho = std::get_if<HoParams>(&spec.kind)) {
    if (sgn(ho->c2) != 0) series.terms.push_back({2, ho->c2});
    return series;
  }
  const auto* pgo = std::get_if<PgoParams>(&spec.kind);
  if (pgo == nullptr) return series;

  const double log_r = std::log(r_max);
  for (int m = 0; 2 * m <= max_power; ++m) {
    Rational t = pgo_taylor_coefficient(*pgo, m);
    if (sgn(t) == 0) continue;
    const double log_bound = std::log(std::fabs(to_double(t))) + 2.0 * m * log_r;
    if (log_bound < std::log(tol)) continue;
    series.terms.push_back({2 * m, std::move(t)});
  }
  return series;
}

PowerSeriesPotential ho_limit(const PgoParams& params, bool include_constant) {
  PowerSeriesPotential series;
  if (include_constant && sgn(params.lambda) != 0) series.terms.push_back({0, params.lambda});
  series.terms.push_back({2, params.mu});
  return series;
}

}  // namespace hydroconf
