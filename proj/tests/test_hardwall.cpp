#include <gtest/gtest.h>

#include <Eigen/Eigenvalues>
#include <cmath>

#include "hydroconf/hardwall.hpp"

namespace hydroconf {
namespace {

PowerSeriesPotential harmonic_series(double c2) {
  PowerSeriesPotential series;
  series.terms.push_back({2, rational_from_double(c2)});
  return series;
}

std::vector<double> grid(double from, double to, double step) {
  std::vector<double> out;
  for (int i = 0; from + i * step <= to + 1e-9; ++i) out.push_back(from + i * step);
  return out;
}

TEST(HardWall, ValidationRejectsSmallRadius) {
  HardWallProblem problem;
  problem.radius = 1.0;
  EXPECT_THROW(problem.validate(), std::invalid_argument);
  problem.radius = std::numeric_limits<double>::infinity();
  EXPECT_THROW(problem.validate(), std::invalid_argument);
}

TEST(HardWall, TruncatedOverlapIsContraction) {
  /// S_R = Gram matrix of the basis on [0, R]: positive definite with spectrum in (0, 1].
  HardWallProblem problem;
  problem.radius = 6.0;
  problem.basis = {0, 5};
  const auto matrices = truncated_matrices(problem);
  const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(matrices.overlap.entries);
  EXPECT_GT(solver.eigenvalues().minCoeff(), 0.0);
  EXPECT_LE(solver.eigenvalues().maxCoeff(), 1.0 + 1e-12);
  EXPECT_NEAR(matrices.overlap.entries(0, 0), quadrature_moment(1, 1, 0, 0, 6.0), 1e-12);
}

TEST(HardWall, TruncatedElementsMatchQuadrature) {
  HardWallProblem problem;
  problem.radius = 7.5;
  problem.basis = {1, 4};
  problem.series = harmonic_series(0.3);
  const auto matrices = truncated_matrices(problem);
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      const int a = problem.basis.principal(i);
      const int b = problem.basis.principal(j);
      const double overlap = quadrature_moment(a, b, 1, 0, 7.5);
      const double atom = 0.5 * (atom_level(a, problem.convention) + atom_level(b, problem.convention)) * overlap;
      const double expected = atom + 0.3 * quadrature_moment(a, b, 1, 2, 7.5);
      EXPECT_NEAR(matrices.hamiltonian.entries(i, j), expected, 1e-11) << i << "," << j;
    }
  }
}

TEST(HardWall, LargeRadiusRecoversFreeAtom) {
  for (bool corrected : {false, true}) {
    HardWallProblem problem;
    problem.radius = 400.0;
    problem.basis = {0, 6};
    problem.corrected = corrected;
    const auto levels = hardwall_spectrum(problem).eigenvalues;
    for (int i = 0; i < 6; ++i) EXPECT_NEAR(levels[i], atom_level(i + 1, EnergyConvention::Hartree), 1e-9);
  }
}

TEST(HardWall, CorrectedVariantRefusesSingularOverlap) {
  HardWallProblem problem;
  problem.radius = 3.0;
  problem.basis = {0, 20};
  problem.corrected = true;
  EXPECT_THROW(hardwall_spectrum(problem), std::runtime_error);
}

TEST(HardWall, RegionsOfSyntheticCurve) {
  const auto radii = grid(1.25, 10.0, 0.25);
  std::vector<double> energies;
  for (double r : radii) energies.push_back(r < 3.0 ? -0.2 : (r < 6.0 ? -0.2 - 0.1 * (r - 3.0) : -0.5));
  const auto regions = detect_regions(radii, energies);
  EXPECT_NEAR(regions.plateau_end, 3.25, 1e-12);
  EXPECT_TRUE(regions.threshold_found);
  EXPECT_NEAR(regions.threshold, 6.0, 1e-9);
}

TEST(HardWall, MinimaNeedProminence) {
  const auto radii = grid(1.1, 10.0, 0.1);
  std::vector<double> energies;
  for (double r : radii) energies.push_back(-0.2 - 0.05 * std::exp(-(r - 4.0) * (r - 4.0)));
  const ScanRegions regions{1.5, 9.5, true};
  const auto minima = detect_minima(radii, energies, regions, 1e-4);
  ASSERT_EQ(minima.size(), 1U);
  EXPECT_NEAR(minima[0].first, 4.0, 1e-9);
  EXPECT_TRUE(detect_minima(radii, energies, regions, 1.0).empty());
}

TEST(HardWall, WeakCouplingScanApproachesFreeLevel) {
  HardWallSettings settings;
  const std::vector<double> couplings{1e-5};
  const auto scan = r_scan({1, 0}, grid(1.1, 30.0, 0.1), couplings, settings);
  EXPECT_TRUE(scan.regions[0].threshold_found);
  EXPECT_NEAR(scan.energies[0].back(), -0.5, 1e-3);
  EXPECT_TRUE(scan.minima.empty());
}

TEST(HardWall, ModerateCouplingHasInteriorMinimum) {
  HardWallSettings settings;
  const std::vector<double> couplings{0.1};
  const auto scan = r_scan({1, 0}, grid(1.1, 30.0, 0.1), couplings, settings);
  EXPECT_FALSE(scan.minima.empty());
}

TEST(HardWall, ScanIsThreadIndependent) {
  HardWallSettings serial;
  serial.basis_size = 8;
  HardWallSettings threaded = serial;
  threaded.threads = 3;
  const std::vector<double> couplings{1e-3, 1e-2};
  const auto radii = grid(2.0, 8.0, 0.5);
  EXPECT_EQ(r_scan({2, 1}, radii, couplings, serial).energies, r_scan({2, 1}, radii, couplings, threaded).energies);
}

TEST(HardWall, ScanRejectsBadInput) {
  const std::vector<double> couplings{1e-3};
  const std::vector<double> bad{0.5, 2.0};
  EXPECT_THROW(r_scan({1, 0}, bad, couplings), std::invalid_argument);
  const std::vector<double> radii{2.0, 3.0};
  EXPECT_THROW(r_scan({1, 0}, radii, {}), std::invalid_argument);
}

}  // namespace
}  // namespace hydroconf

namespace hydroconf {
namespace {

TEST(Crossing, RequiresUpperOrbitalFirst) {
  const std::vector<double> radii{2.0, 3.0};
  EXPECT_THROW(crossing_detect({Orbital{3, 0}, Orbital{4, 2}}, radii, 1e-5), std::invalid_argument);
  EXPECT_THROW(crossing_detect({Orbital{4, 0}, Orbital{3, 0}}, radii, 1e-5), std::invalid_argument);
}

}  // namespace
}  // namespace hydroconf
