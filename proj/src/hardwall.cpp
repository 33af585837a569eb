#include "hydroconf/hardwall.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "hydroconf/parallel.hpp"

namespace hydroconf {

namespace {

constexpr double kPanelWidth = 0.5;

PowerSeriesPotential harmonic(double coupling) {
  PowerSeriesPotential series;
  if (coupling != 0.0) series.terms.push_back({2, rational_from_double(coupling)});
  return series;
}

double tracked_energy(const Orbital& orbital, double radius, double coupling, const HardWallSettings& settings) {
  HardWallProblem problem;
  problem.radius = radius;
  problem.basis = BasisWindow{orbital.l, settings.basis_size};
  problem.series = harmonic(coupling);
  problem.corrected = settings.corrected;
  problem.convention = settings.convention;
  const int index = problem.basis.index_of(orbital.n);
  if (index < 0 || index >= settings.basis_size) {
    throw std::invalid_argument("orbital " + orbital.label() + " lies outside the basis window");
  }
  return hardwall_spectrum(problem).eigenvalues[static_cast<std::size_t>(index)];
}

void check_grid(std::span<const double> radii) {
  if (radii.empty()) throw std::invalid_argument("empty radius grid");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    if (!(radii[i] > 1.0)) throw std::invalid_argument("radius grid must lie in (1, inf)");
    if (i > 0 && !(radii[i] > radii[i - 1])) throw std::invalid_argument("radius grid must be ascending");
  }
}

}  // namespace

void HardWallProblem::validate() const {
  if (!(radius > 1.0) || !std::isfinite(radius)) {
    throw std::invalid_argument("hard-wall radius must be finite and > 1, got " + std::to_string(radius));
  }
  basis.validate();
}

TruncatedMatrices truncated_matrices(const HardWallProblem& problem) {
  problem.validate();
  const BasisWindow& basis = problem.basis;
  for (const auto& term : problem.series.terms) {
    if (term.power < 0 || term.power % 2 != 0) throw std::invalid_argument("series powers must be even and >= 0");
  }

  // Past the envelope cutoff of the widest pair the integrands vanish.
  int top_power = 0;
  for (const auto& term : problem.series.terms) top_power = std::max(top_power, term.power);
  const int n_max = basis.principal(basis.size - 1);
  const double upper = std::min(problem.radius, integration_cutoff(n_max, n_max, basis.l, top_power));
  const RadialGrid grid = tabulate(basis, upper, kPanelWidth);

  const int size = basis.size;
  const std::size_t points = grid.radii.size();
  Eigen::MatrixXd values(size, static_cast<Eigen::Index>(points));
  for (int i = 0; i < size; ++i) {
    for (std::size_t q = 0; q < points; ++q) {
      values(i, static_cast<Eigen::Index>(q)) = grid.values[static_cast<std::size_t>(i)][q];
    }
  }

  auto weighted = [&](auto&& weight) {
    Eigen::VectorXd w(static_cast<Eigen::Index>(points));
    for (std::size_t q = 0; q < points; ++q) {
      const double r = grid.radii[q];
      w(static_cast<Eigen::Index>(q)) = grid.weights[q] * r * r * weight(r);
    }
    Eigen::MatrixXd m = values * w.asDiagonal() * values.transpose();
    return Eigen::MatrixXd(0.5 * (m + m.transpose()));
  };

  TruncatedMatrices out;
  out.overlap.l = basis.l;
  out.overlap.size = size;
  out.overlap.convention = problem.convention;
  out.overlap.entries = weighted([](double) { return 1.0; });

  out.hamiltonian = out.overlap;
  Eigen::MatrixXd& h = out.hamiltonian.entries;
  for (int i = 0; i < size; ++i) {
    for (int j = 0; j < size; ++j) {
      const double level = 0.5 * (atom_level(basis.principal(i), problem.convention) +
                                  atom_level(basis.principal(j), problem.convention));
      h(i, j) = level * out.overlap.entries(i, j);
    }
  }
  for (const auto& term : problem.series.terms) {
    out.hamiltonian.powers.push_back(term.power);
    const int power = term.power;
    h += term.value() * weighted([power](double r) { return std::pow(r, power); });
  }
  return out;
}

SpectrumResult hardwall_spectrum(const HardWallProblem& problem) {
  const TruncatedMatrices matrices = truncated_matrices(problem);

  SpectrumResult result;
  result.params.convention = problem.convention;
  result.params.hard_wall = problem.radius;
  if (problem.series.coefficient(2) != 0 && problem.series.terms.size() == 1) {
    result.params.kind = HoParams{problem.series.coefficient(2)};
  }
  result.basis = problem.basis;
  result.series = problem.series;

  if (!problem.corrected) {
    result.eigenvalues = eigenvalues(matrices.hamiltonian);
    return result;
  }

  const Eigen::MatrixXd& s = matrices.overlap.entries;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> overlap_solver(s, Eigen::EigenvaluesOnly);
  const double smallest = overlap_solver.eigenvalues().minCoeff();
  const double largest = overlap_solver.eigenvalues().maxCoeff();
  if (!(smallest > 0.0) || largest / smallest > 1e12) {
    throw std::runtime_error("truncated overlap is numerically singular (condition estimate " +
                             std::to_string(smallest > 0.0 ? largest / smallest : INFINITY) + ") at R = " +
                             std::to_string(problem.radius));
  }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrices.hamiltonian.entries, s,
                                                                    Eigen::EigenvaluesOnly | Eigen::Ax_lBx);
  if (solver.info() != Eigen::Success) throw std::runtime_error("generalized eigensolver did not converge");
  const auto& values = solver.eigenvalues();
  result.eigenvalues.assign(values.data(), values.data() + values.size());
  return result;
}

ScanRegions detect_regions(std::span<const double> radii, std::span<const double> energies) {
  if (radii.size() != energies.size() || radii.empty()) throw std::invalid_argument("scan arrays mismatch");
  const auto [lo, hi] = std::minmax_element(energies.begin(), energies.end());
  const double swing = *hi - *lo;

  ScanRegions regions;
  std::size_t plateau = 0;
  while (plateau + 1 < energies.size() && std::fabs(energies[plateau + 1] - energies[0]) <= 0.1 * swing) {
    ++plateau;
  }
  regions.plateau_end = radii[plateau];

  const double last = energies.back();
  std::size_t start = energies.size();
  while (start > 0 && std::fabs(energies[start - 1] - last) < 1e-3 * std::fabs(last)) --start;
  // A threshold only counts when the curve actually settles before the grid ends.
  if (start + 1 < energies.size()) {
    regions.threshold = radii[start];
    regions.threshold_found = true;
  } else {
    regions.threshold = radii.back();
  }
  return regions;
}

std::vector<std::pair<double, double>> detect_minima(std::span<const double> radii,
                                                     std::span<const double> energies,
                                                     const ScanRegions& regions, double prominence) {
  std::vector<std::pair<double, double>> minima;
  for (std::size_t i = 1; i + 1 < energies.size(); ++i) {
    if (!(energies[i] < energies[i - 1] && energies[i] <= energies[i + 1])) continue;
    const double left = *std::max_element(energies.begin(), energies.begin() + static_cast<std::ptrdiff_t>(i));
    const double right = *std::max_element(energies.begin() + static_cast<std::ptrdiff_t>(i) + 1, energies.end());
    if (std::min(left, right) - energies[i] < prominence) continue;
    if (!(radii[i] > regions.plateau_end && radii[i] < regions.threshold)) continue;
    minima.emplace_back(radii[i], energies[i]);
  }
  return minima;
}

RScanResult r_scan(const Orbital& orbital, std::span<const double> radii, std::span<const double> couplings,
                   const HardWallSettings& settings) {
  orbital.validate();
  check_grid(radii);
  if (couplings.empty()) throw std::invalid_argument("no couplings to scan");

  RScanResult result;
  result.orbital = orbital;
  result.radii.assign(radii.begin(), radii.end());
  result.couplings.assign(couplings.begin(), couplings.end());
  result.energies.assign(couplings.size(), std::vector<double>(radii.size()));

  const std::size_t tasks = couplings.size() * radii.size();
  parallel_for(tasks, settings.threads, [&](std::size_t task) {
    const std::size_t c = task / radii.size();
    const std::size_t r = task % radii.size();
    result.energies[c][r] = tracked_energy(orbital, radii[r], couplings[c], settings);
  });

  for (std::size_t c = 0; c < couplings.size(); ++c) {
    const ScanRegions regions = detect_regions(radii, result.energies[c]);
    result.regions.push_back(regions);
    for (const auto& [radius, energy] : detect_minima(radii, result.energies[c], regions, settings.prominence)) {
      result.minima.push_back({couplings[c], radius, energy});
    }
  }
  return result;
}

std::vector<double> crossing_detect(const std::pair<Orbital, Orbital>& pair, std::span<const double> radii,
                                    double coupling, const HardWallSettings& settings) {
  const auto& [upper, lower] = pair;
  upper.validate();
  lower.validate();
  if (!(upper.n > lower.n && upper.l > lower.l)) {
    throw std::invalid_argument("crossing candidates need n' > n and l' > l, got (" + upper.label() + ", " +
                                lower.label() + ")");
  }
  check_grid(radii);

  auto gap = [&](double radius) {
    return tracked_energy(upper, radius, coupling, settings) - tracked_energy(lower, radius, coupling, settings);
  };
  std::vector<double> gaps(radii.size());
  parallel_for(radii.size(), settings.threads, [&](std::size_t i) { gaps[i] = gap(radii[i]); });

  // Differences at rounding level carry no sign information.
  constexpr double kNoise = 1e-12;
  std::vector<double> crossings;
  for (std::size_t i = 0; i + 1 < radii.size(); ++i) {
    if (std::fabs(gaps[i]) < kNoise || std::fabs(gaps[i + 1]) < kNoise) continue;
    if ((gaps[i] > 0.0) == (gaps[i + 1] > 0.0)) continue;
    double a = radii[i];
    double b = radii[i + 1];
    double gap_a = gaps[i];
    while (b - a > 1e-3) {
      const double mid = 0.5 * (a + b);
      const double gap_mid = gap(mid);
      if ((gap_mid > 0.0) == (gap_a > 0.0)) {
        a = mid;
        gap_a = gap_mid;
      } else {
        b = mid;
      }
    }
    crossings.push_back(0.5 * (a + b));
  }
  return crossings;
}

}  // namespace hydroconf
