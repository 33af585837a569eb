#include "hydroconf/scattering.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "hydroconf/parallel.hpp"

namespace hydroconf {

namespace {

using Complex = std::complex<double>;

constexpr double kSaturation = 700.0;

/// Columns are right- and left-moving waves e^{+-ikx}/sqrt(k) and their derivatives.
Eigen::Matrix2cd plane_waves(double wavenumber, double x) {
  const Complex ik(0.0, wavenumber);
  const Complex forward = std::exp(ik * x) / std::sqrt(wavenumber);
  const Complex backward = std::exp(-ik * x) / std::sqrt(wavenumber);
  Eigen::Matrix2cd w;
  w << forward, backward, ik * forward, -ik * backward;
  return w;
}

}  // namespace

void PiecewiseBarrier::validate() const {
  if (breakpoints.size() < 2) throw std::invalid_argument("barrier needs at least one segment");
  if (values.size() + 1 != breakpoints.size()) throw std::invalid_argument("one value per segment required");
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    if (!(breakpoints[i] > breakpoints[i - 1])) throw std::invalid_argument("breakpoints must ascend strictly");
  }
}

double PiecewiseBarrier::max_value() const {
  double top = std::max(left_level, right_level);
  for (double v : values) top = std::max(top, v);
  return top;
}

PiecewiseBarrier discretize(const std::function<double(double)>& potential, double a, double b, int segments) {
  if (segments < 1) throw std::invalid_argument("need at least one segment");
  if (!(b > a)) throw std::invalid_argument("empty discretization domain");
  PiecewiseBarrier barrier;
  const double width = (b - a) / segments;
  for (int i = 0; i <= segments; ++i) barrier.breakpoints.push_back(i == segments ? b : a + i * width);
  for (int i = 0; i < segments; ++i) barrier.values.push_back(potential(a + (i + 0.5) * width));
  barrier.left_level = potential(a);
  barrier.right_level = potential(b);
  return barrier;
}

Eigen::Matrix2d segment_propagator(const PiecewiseBarrier& barrier, std::size_t segment, double energy) {
  const double width = barrier.breakpoints[segment + 1] - barrier.breakpoints[segment];
  const double excess = 2.0 * (energy - barrier.values[segment]);
  Eigen::Matrix2d p;
  if (excess > 0.0) {
    const double k = std::sqrt(excess);
    const double c = std::cos(k * width);
    const double s = std::sin(k * width);
    p << c, s / k, -k * s, c;
  } else if (excess < 0.0) {
    const double kappa = std::sqrt(-excess);
    const double x = std::min(kappa * width, kSaturation);
    const double c = std::cosh(x);
    const double s = std::sinh(x);
    p << c, s / kappa, kappa * s, c;
  } else {
    p << 1.0, width, 0.0, 1.0;
  }
  return p;
}

TransferMatrix transfer_matrix(const PiecewiseBarrier& barrier, double energy) {
  barrier.validate();
  if (!std::isfinite(energy)) throw std::invalid_argument("energy must be finite");

  TransferMatrix result;
  for (double v : barrier.values) {
    if (std::fabs(energy - v) < 1e-12) {
      energy += 1e-10;
      result.perturbed = true;
      break;
    }
  }
  if (!(energy > barrier.left_level && energy > barrier.right_level)) {
    throw std::invalid_argument("energy " + std::to_string(energy) + " is not above both asymptotic levels");
  }

  Eigen::Matrix2d propagator = Eigen::Matrix2d::Identity();
  for (std::size_t i = 0; i < barrier.segments(); ++i) {
    const double width = barrier.breakpoints[i + 1] - barrier.breakpoints[i];
    const double excess = 2.0 * (energy - barrier.values[i]);
    if (excess < 0.0 && std::sqrt(-excess) * width > kSaturation) result.saturated = true;
    propagator = segment_propagator(barrier, i, energy) * propagator;
  }

  // Unit determinant makes the inverse the adjugate.
  Eigen::Matrix2d inverse;
  inverse << propagator(1, 1), -propagator(0, 1), -propagator(1, 0), propagator(0, 0);

  const double k_left = std::sqrt(2.0 * (energy - barrier.left_level));
  const double k_right = std::sqrt(2.0 * (energy - barrier.right_level));
  const Eigen::Matrix2cd left = plane_waves(k_left, barrier.breakpoints.front());
  const Eigen::Matrix2cd right = plane_waves(k_right, barrier.breakpoints.back());
  result.entries = left.inverse() * inverse.cast<Complex>() * right;
  return result;
}

double transmission(const PiecewiseBarrier& barrier, double energy) {
  const TransferMatrix m = transfer_matrix(barrier, energy);
  if (m.saturated) return 0.0;
  const double t = 1.0 / std::norm(m.entries(0, 0));
  return std::clamp(t, 0.0, 1.0);
}

TransmissionCurve transmission_curve(const PiecewiseBarrier& barrier, std::span<const double> energies,
                                     unsigned threads) {
  TransmissionCurve curve;
  curve.energies.assign(energies.begin(), energies.end());
  curve.transmission.resize(energies.size());
  parallel_for(energies.size(), threads,
               [&](std::size_t i) { curve.transmission[i] = transmission(barrier, energies[i]); });
  return curve;
}

std::vector<TransmissionPeak> find_peaks(const TransmissionCurve& curve, double prominence) {
  const auto& x = curve.energies;
  const auto& y = curve.transmission;
  if (x.size() != y.size()) throw std::invalid_argument("curve arrays differ in length");

  std::vector<TransmissionPeak> peaks;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (!(y[i] > y[i - 1] && y[i] >= y[i + 1])) continue;
    // A plateau counts once, at its left edge.
    std::size_t right_edge = i;
    while (right_edge + 1 < y.size() && y[right_edge + 1] == y[i]) ++right_edge;
    if (right_edge + 1 >= y.size()) continue;

    // Bases: lowest point before running into a higher sample on each side.
    double left_base = y[i];
    for (std::size_t j = i; j-- > 0;) {
      if (y[j] > y[i]) break;
      left_base = std::min(left_base, y[j]);
    }
    double right_base = y[i];
    for (std::size_t j = right_edge + 1; j < y.size(); ++j) {
      if (y[j] > y[i]) break;
      right_base = std::min(right_base, y[j]);
    }
    const double height_above = y[i] - std::max(left_base, right_base);
    if (height_above < prominence) continue;

    TransmissionPeak peak{x[i], y[i], height_above};
    if (right_edge == i) {
      const double x0 = x[i - 1], x1 = x[i], x2 = x[i + 1];
      const double y0 = y[i - 1], y1 = y[i], y2 = y[i + 1];
      const double denom = (x0 - x1) * (x0 - x2) * (x1 - x2);
      const double a = (x2 * (y1 - y0) + x1 * (y0 - y2) + x0 * (y2 - y1)) / denom;
      const double b = (x2 * x2 * (y0 - y1) + x1 * x1 * (y2 - y0) + x0 * x0 * (y1 - y2)) / denom;
      if (a < 0.0) {
        const double vertex = -b / (2.0 * a);
        if (vertex > x0 && vertex < x2) {
          const double c = y1 - a * x1 * x1 - b * x1;
          peak.energy = vertex;
          peak.height = std::clamp(a * vertex * vertex + b * vertex + c, 0.0, 1.0);
        }
      }
    }
    peaks.push_back(peak);
    i = right_edge;
  }
  return peaks;
}

TransmissionCurve resonances(const PiecewiseBarrier& barrier, std::span<const double> energies, double prominence,
                             unsigned threads) {
  TransmissionCurve curve = transmission_curve(barrier, energies, threads);
  const auto& x = curve.energies;
  const auto& y = curve.transmission;

  std::vector<std::size_t> candidates;
  for (std::size_t i = 1; i + 1 < y.size(); ++i) {
    if (y[i] > y[i - 1] && y[i] >= y[i + 1]) candidates.push_back(i);
  }

  std::vector<TransmissionPeak> refined(candidates.size());
  parallel_for(candidates.size(), threads, [&](std::size_t c) {
    const std::size_t i = candidates[c];
    const double ratio = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = x[i - 1];
    double b = x[i + 1];
    double u = b - ratio * (b - a);
    double v = a + ratio * (b - a);
    double tu = transmission(barrier, u);
    double tv = transmission(barrier, v);
    while (b - a > 1e-13 * std::max(1.0, std::fabs(x[i]))) {
      if (tu < tv) {
        a = u;
        u = v;
        tu = tv;
        v = a + ratio * (b - a);
        tv = transmission(barrier, v);
      } else {
        b = v;
        v = u;
        tv = tu;
        u = b - ratio * (b - a);
        tu = transmission(barrier, u);
      }
    }
    double best_energy = x[i];
    double best = y[i];
    if (std::max(tu, tv) > best) {
      best_energy = tu > tv ? u : v;
      best = std::max(tu, tv);
    }

    double left_base = best;
    for (std::size_t j = i; j-- > 0;) {
      if (y[j] > best) break;
      left_base = std::min(left_base, y[j]);
    }
    double right_base = best;
    for (std::size_t j = i + 1; j < y.size(); ++j) {
      if (y[j] > best) break;
      right_base = std::min(right_base, y[j]);
    }
    refined[c] = {best_energy, best, best - std::max(left_base, right_base)};
  });

  for (const auto& peak : refined) {
    if (peak.prominence >= prominence) curve.peaks.push_back(peak);
  }
  return curve;
}

}  // namespace hydroconf
