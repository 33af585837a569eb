#pragma once

#include <limits>
#include <span>
#include <string>
#include <vector>

#include "hydroconf/exact.hpp"

namespace hydroconf {

struct Orbital {
  int n = 1;
  int l = 0;

  /// Throws std::invalid_argument unless 0 <= l < n.
  void validate() const;
  /// Spectroscopic label such as "1s" or "5g".
  std::string label() const;
  static Orbital parse(const std::string& label);

  friend bool operator==(const Orbital&, const Orbital&) = default;
};

/// Radial functions R_{n,l} with n = l+1 .. l+size.
struct BasisWindow {
  int l = 0;
  int size = 1;

  void validate() const;
  int principal(int index) const { return l + 1 + index; }
  /// Position of orbital (n, l) in the window.
  int index_of(int n) const { return n - l - 1; }
};

/// Generalized Laguerre polynomial L_p^alpha(x) by the forward three-term recurrence.
double laguerre(int degree, double alpha, double x);

/// Normalization (2/n^2) sqrt((n-l-1)!/(n+l)!).
double radial_normalization(int n, int l);

/// Hydrogenic radial function, positive at the origin:
///   R_{n,l}(r) = (2/n^2) sqrt((n-l-1)!/(n+l)!) e^{-r/n} (2r/n)^l L^{2l+1}_{n-l-1}(2r/n)
double radial_eval(const Orbital& orbital, double r);

/// <n_bra l| r^k |n_ket l> in closed form: both Laguerre polynomials are
/// expanded into monomials and each term integrated with
/// int_0^inf r^m e^{-a r} dr = m!/a^{m+1}. Exact for k >= -1.
Surd exact_moment(int n_bra, int n_ket, int l, int k);

/// Gauss-Legendre rule of the given order on [-1, 1].
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};
const GaussLegendreRule& gauss_legendre(int order);

/// Panel-wise Gauss-Legendre evaluation of int_0^upper r^{2+k} R_{n_bra,l} R_{n_ket,l} dr.
/// Infinite upper limits are cut where the integrand envelope drops below
/// 1e-35 of its peak. Refinement runs until two successive panel widths
/// agree to 1e-12 of the absolute-integrand scale; throws std::runtime_error
/// if they never do.
double quadrature_moment(int n_bra, int n_ket, int l, int k,
                         double upper = std::numeric_limits<double>::infinity());

/// Upper cutoff radius for infinite-range integrals of the given basis pair.
double integration_cutoff(int n_bra, int n_ket, int l, int k);

/// Basis functions of a window tabulated on a panel Gauss-Legendre grid
/// over [0, upper]. Products of rows with weights give truncated integrals.
struct RadialGrid {
  std::vector<double> radii;
  std::vector<double> weights;
  std::vector<std::vector<double>> values;  // [index][point]
};
RadialGrid tabulate(const BasisWindow& basis, double upper, double panel_width, int order = 48);

}  // namespace hydroconf
