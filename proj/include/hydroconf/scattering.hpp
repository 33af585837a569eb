#pragma once

#include <Eigen/Dense>

#include <functional>
#include <span>
#include <vector>

namespace hydroconf {

/// Piecewise-constant potential: values[i] on [breakpoints[i], breakpoints[i+1]],
/// with constant levels outside the covered interval.
struct PiecewiseBarrier {
  std::vector<double> breakpoints;
  std::vector<double> values;
  double left_level = 0.0;
  double right_level = 0.0;

  /// Throws std::invalid_argument unless breakpoints ascend strictly and
  /// there is exactly one value per segment.
  void validate() const;
  std::size_t segments() const { return values.size(); }
  double max_value() const;
};

/// Uniform segments on [a, b] valued at their midpoints; the asymptotic
/// levels are the potential at a and b.
PiecewiseBarrier discretize(const std::function<double(double)>& potential, double a, double b, int segments);

/// M maps outgoing right amplitudes to left amplitudes in the flux-normalized
/// plane-wave basis, so T = 1 / |M_11|^2.
struct TransferMatrix {
  Eigen::Matrix2cd entries = Eigen::Matrix2cd::Identity();
  /// Some segment had kappa * width > 700; the wave is treated as fully blocked.
  bool saturated = false;
  /// E sat within 1e-12 of a segment value and was moved up by 1e-10.
  bool perturbed = false;
};

/// Propagator of (psi, psi') across segment i at energy E (Hartree units,
/// wavenumber sqrt(2(E - V))). Real with unit determinant.
Eigen::Matrix2d segment_propagator(const PiecewiseBarrier& barrier, std::size_t segment, double energy);

TransferMatrix transfer_matrix(const PiecewiseBarrier& barrier, double energy);

/// Transmission probability; requires E above both asymptotic levels.
double transmission(const PiecewiseBarrier& barrier, double energy);

struct TransmissionPeak {
  double energy = 0.0;
  double height = 0.0;
  double prominence = 0.0;
};

struct TransmissionCurve {
  std::vector<double> energies;
  std::vector<double> transmission;
  std::vector<TransmissionPeak> peaks;
};

TransmissionCurve transmission_curve(const PiecewiseBarrier& barrier, std::span<const double> energies,
                                     unsigned threads = 1);

/// Local maxima whose prominence (height above the higher of the two
/// bounding minima) reaches the threshold, each refined by the vertex of
/// the parabola through it and its neighbours.
std::vector<TransmissionPeak> find_peaks(const TransmissionCurve& curve, double prominence);

/// Resonances of the barrier over an energy window. Every sampled local
/// maximum is a candidate, so a grid finer than the resonance spacing
/// catches each one however narrow it is; the candidate is then maximized
/// by golden-section search inside its bracket and kept when the refined
/// height clears the sampled bases by `prominence`.
TransmissionCurve resonances(const PiecewiseBarrier& barrier, std::span<const double> energies, double prominence,
                             unsigned threads = 1);

}  // namespace hydroconf
