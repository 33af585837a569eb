#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "hydroconf/exact.hpp"

namespace hydroconf {

/// Energy normalization of the free-atom diagonal.
///
/// TableRydberg lists free levels as -1/n^2; Hartree as -1/(2 n^2). The
/// confining series is added unscaled in both, so a TableRydberg spectrum
/// with series S equals twice the Hartree spectrum with series S/2.
enum class EnergyConvention { TableRydberg, Hartree };

/// Free-atom level -1/n^2 or -1/(2 n^2).
double atom_level(int n, EnergyConvention convention);
Rational atom_level_exact(int n, EnergyConvention convention);

/// 2 for TableRydberg, 1 for Hartree.
double convention_scale(EnergyConvention convention);

std::string to_string(EnergyConvention convention);
EnergyConvention parse_convention(const std::string& text);

/// Conversion of a TableRydberg energy to electron-volts.
inline constexpr double kRydbergEnergyEv = 13.6;

/// Pseudo-Gaussian oscillator of order s:
///   W(r) = (lambda + sum_{k=1..s} C_k r^{2k}) exp(-mu r^2),  C_k = (lambda+k) mu^k / k!
struct PgoParams {
  int order = 3;
  Rational lambda{0};
  Rational mu{0};
};

/// Harmonic confinement c2 * r^2.
struct HoParams {
  Rational c2{0};
};

struct NoConfinement {};

struct ConfinementSpec {
  std::variant<NoConfinement, PgoParams, HoParams> kind;
  std::optional<double> hard_wall;
  EnergyConvention convention = EnergyConvention::TableRydberg;

  /// Throws std::invalid_argument on s < 1, mu <= 0, c2 < 0 or R <= 1.
  void validate() const;
};

struct SeriesTerm {
  int power = 0;
  Rational coefficient;
  double value() const { return to_double(coefficient); }
};

/// Truncated even-power expansion sum_m t_{2m} r^{2m}, powers strictly increasing.
struct PowerSeriesPotential {
  std::vector<SeriesTerm> terms;
  double truncation_tol = 0.0;
  double r_max_bound = 0.0;

  double evaluate(double r) const;
  bool empty() const { return terms.empty(); }
  /// Coefficient at the given power, zero when absent.
  Rational coefficient(int power) const;
  /// Every coefficient multiplied by factor.
  PowerSeriesPotential scaled(const Rational& factor) const;
};

double pgo_value(const PgoParams& params, double r);

/// The C_k of the polynomial prefactor; C_0 = lambda.
Rational pgo_polynomial_coefficient(const PgoParams& params, int k);

/// Exact Taylor coefficient t_{2m} = sum_{k=0}^{min(m,s)} C_k (-mu)^{m-k} / (m-k)!.
Rational pgo_taylor_coefficient(const PgoParams& params, int m);

/// Radius used for the truncation estimate: twice the outermost orbit scale.
double truncation_radius(int l_max, int basis_size);

/// Expansion of the confinement up to max_power. PGO terms whose bound
/// |t_{2m}| r_max^{2m} is below tol are dropped (exact zeros always are);
/// HO gives {(2, c2)}; no confinement gives an empty series.
PowerSeriesPotential taylor_coefficients(const ConfinementSpec& spec, int max_power, double tol,
                                         double r_max);

/// The s -> infinity limit {(0, lambda), (2, mu)}. The constant is dropped
/// when include_constant is false, matching the pure r^2 soft wall.
PowerSeriesPotential ho_limit(const PgoParams& params, bool include_constant);

}  // namespace hydroconf
