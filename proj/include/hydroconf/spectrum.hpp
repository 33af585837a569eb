#pragma once

#include <Eigen/Dense>

#include <span>
#include <utility>
#include <vector>

#include "hydroconf/basis.hpp"
#include "hydroconf/potential.hpp"

namespace hydroconf {

/// Where radial moments <n'l|r^k|nl> come from. Both are exact and are
/// checked against each other; the generating functional is the default.
enum class MomentEngine { GeneratingFunctional, ClosedForm };

/// How level energies are read off the Hamiltonian matrix.
///
/// Diagonalization returns the sorted eigenvalues. DiagonalElements returns
/// <n l|H|n l> in basis order, i.e. the free level plus the first-order
/// shift from every series term.
enum class LevelMethod { Diagonalization, DiagonalElements };

/// Symmetric matrix over a basis window.
struct OperatorMatrix {
  int l = 0;
  int size = 0;
  std::vector<int> powers;
  Eigen::MatrixXd entries;
  EnergyConvention convention = EnergyConvention::TableRydberg;
};

/// <n'l| r^k |nl> for all pairs of the window. Results are memoized per
/// (l, size, k, engine); computing a missing matrix fans out over `threads`.
Eigen::MatrixXd moment_matrix(const BasisWindow& basis, int k,
                              MomentEngine engine = MomentEngine::GeneratingFunctional,
                              unsigned threads = 1);

/// H = diag(free levels) + sum_terms t * M^{(power)}.
/// Throws std::invalid_argument for odd or negative powers.
OperatorMatrix assemble(const BasisWindow& basis, const PowerSeriesPotential& series,
                        EnergyConvention convention,
                        MomentEngine engine = MomentEngine::GeneratingFunctional,
                        unsigned threads = 1);

/// Ascending eigenvalues. Throws std::runtime_error if the solver fails or
/// any eigenpair residual exceeds 1e-10 ||H||.
std::vector<double> eigenvalues(const OperatorMatrix& matrix);

struct SpectrumOptions {
  LevelMethod method = LevelMethod::Diagonalization;
  MomentEngine engine = MomentEngine::GeneratingFunctional;
  int max_power = 60;
  double taylor_tol = 1e-14;
  unsigned threads = 1;
};

struct SpectrumResult {
  std::vector<double> eigenvalues;
  ConfinementSpec params;
  BasisWindow basis;
  LevelMethod method = LevelMethod::Diagonalization;
  PowerSeriesPotential series;

  /// Energies in eV; TableRydberg values scale by 13.6, Hartree by 27.2.
  std::vector<double> ev_values() const;
};

/// Taylor expansion, assembly and level extraction for a confinement
/// without hard wall (use hardwall_spectrum for that).
SpectrumResult spectrum(const ConfinementSpec& spec, const BasisWindow& basis,
                        const SpectrumOptions& options = {});

/// sum_terms t_{2m} <n l| r^{2m} |n l>.
double first_order_shift(const Orbital& orbital, const PowerSeriesPotential& series);

enum class CriticalMethod { FirstOrder, Diagonalization };

struct CriticalCouplingResult {
  Orbital orbital;
  double critical_value = 0.0;
  CriticalMethod method = CriticalMethod::FirstOrder;
  std::pair<double, double> bracket;
  int iterations = 0;
};

/// Exact first-order zero crossing of c2: |free level| / <r^2>.
Rational first_order_critical(const Orbital& orbital, EnergyConvention convention);

/// Smallest r^2 coefficient at which the orbital's level reaches zero.
/// The diagonalization method bisects on the sorted eigenvalue with index
/// n-l-1 of the window (which must have the orbital's l).
CriticalCouplingResult critical_coupling(const Orbital& orbital, CriticalMethod method,
                                         const BasisWindow& basis,
                                         EnergyConvention convention = EnergyConvention::TableRydberg);

/// Energies of (n, l) for l = 0..n-1 at each r^2 coupling: energies[c][l].
struct DegeneracyTable {
  int n = 2;
  std::vector<double> couplings;
  std::vector<std::vector<double>> energies;
};

DegeneracyTable degeneracy_scan(int n, std::span<const double> couplings, int basis_size,
                                EnergyConvention convention = EnergyConvention::TableRydberg,
                                unsigned threads = 1);

}  // namespace hydroconf
