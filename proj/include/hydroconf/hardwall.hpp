#pragma once

#include <span>
#include <utility>
#include <vector>

#include "hydroconf/basis.hpp"
#include "hydroconf/potential.hpp"
#include "hydroconf/spectrum.hpp"

namespace hydroconf {

/// Basis window plus soft confinement cut off by an impenetrable sphere.
///
/// corrected = true solves H_R v = e S_R v with the truncated overlap;
/// corrected = false takes the plain eigenvalues of H_R. The truncated
/// atom part is not a true quadratic form of the kinetic operator, so the
/// generalized problem is unbounded below once S_R is far from identity
/// (small R). The plain variant is therefore the default.
struct HardWallProblem {
  double radius = 10.0;
  BasisWindow basis;
  PowerSeriesPotential series;
  bool corrected = false;
  EnergyConvention convention = EnergyConvention::Hartree;

  /// Throws std::invalid_argument unless radius > 1 and the basis is valid.
  void validate() const;
};

struct TruncatedMatrices {
  OperatorMatrix hamiltonian;
  OperatorMatrix overlap;
};

/// Matrix elements over [0, R]. The atom part uses
/// (-1/2 Lap - 1/r) R_nl = -1/(2n^2) R_nl, symmetrized as
/// (e_n + e_n')/2 * S_R[n'][n]; the series is integrated term by term.
TruncatedMatrices truncated_matrices(const HardWallProblem& problem);

/// Ascending levels of the truncated problem. Throws std::runtime_error
/// for the corrected variant when S_R has condition number above 1e12.
SpectrumResult hardwall_spectrum(const HardWallProblem& problem);

struct HardWallSettings {
  int basis_size = 20;
  bool corrected = false;
  EnergyConvention convention = EnergyConvention::Hartree;
  double prominence = 1e-4;
  unsigned threads = 1;
};

/// Boundaries of the three regimes of one e(R) curve.
struct ScanRegions {
  double plateau_end = 0.0;  // last R of region 1
  double threshold = 0.0;    // R_h, start of region 3
  bool threshold_found = false;
};

struct ScanMinimum {
  double coupling = 0.0;
  double radius = 0.0;
  double energy = 0.0;
};

struct RScanResult {
  Orbital orbital;
  std::vector<double> radii;
  std::vector<double> couplings;
  std::vector<std::vector<double>> energies;  // [coupling][radius]
  std::vector<ScanRegions> regions;           // per coupling
  std::vector<ScanMinimum> minima;
};

/// Region 1 ends at the last leading R whose level stays within 10% of
/// the curve's total swing from e(R_0). R_h is the first R from which
/// |e - e(R_max)| < 1e-3 |e(R_max)| holds to the end of the grid.
ScanRegions detect_regions(std::span<const double> radii, std::span<const double> energies);

/// Interior local minima (three-point test) with prominence at least
/// `prominence`, kept only when they lie strictly inside region 2.
std::vector<std::pair<double, double>> detect_minima(std::span<const double> radii,
                                                     std::span<const double> energies,
                                                     const ScanRegions& regions, double prominence);

/// e(R) of the orbital, tracked as sorted index n-l-1 of its l window,
/// for each r^2 coupling of the harmonic confinement.
RScanResult r_scan(const Orbital& orbital, std::span<const double> radii, std::span<const double> couplings,
                   const HardWallSettings& settings = {});

/// Radii where e(pair.first) - e(pair.second) changes sign, refined by
/// bisection to 1e-3 Bohr. pair.first must have the larger n and l, as in (4d, 3s).
std::vector<double> crossing_detect(const std::pair<Orbital, Orbital>& pair, std::span<const double> radii,
                                    double coupling, const HardWallSettings& settings = {});

}  // namespace hydroconf
