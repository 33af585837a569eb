#include <gtest/gtest.h>

#include <cmath>

#include "hydroconf/oracle.hpp"

namespace hydroconf {
namespace {

RadialProblem coulomb(int l = 0) {
  RadialProblem problem;
  problem.potential = [](double r) { return -1.0 / r; };
  problem.l = l;
  return problem;
}

TEST(Numerov, ValidationRejectsBadProblems) {
  RadialProblem problem = coulomb();
  problem.points = 10;
  EXPECT_THROW(problem.validate(), std::invalid_argument);
  problem = coulomb();
  problem.potential = nullptr;
  EXPECT_THROW(problem.validate(), std::invalid_argument);
  EXPECT_THROW(numerov_eigen(coulomb(), -1), std::invalid_argument);
}

TEST(Numerov, HydrogenLevels) {
  EXPECT_NEAR(numerov_eigen(coulomb(), 0), -0.5, 1e-7);
  EXPECT_NEAR(numerov_eigen(coulomb(), 1), -0.125, 1e-7);
  EXPECT_NEAR(numerov_eigen(coulomb(1), 0), -0.125, 1e-7);
  EXPECT_NEAR(numerov_eigen(coulomb(2), 0), -1.0 / 18.0, 1e-7);
}

TEST(Numerov, OscillatorLevels) {
  RadialProblem problem;
  problem.potential = [](double r) { return 0.5 * r * r; };
  problem.r_max = 10.0;
  problem.points = 20000;
  EXPECT_NEAR(numerov_eigen(problem, 0), 1.5, 1e-7);
  EXPECT_NEAR(numerov_eigen(problem, 1), 3.5, 1e-7);
  problem.l = 1;
  EXPECT_NEAR(numerov_eigen(problem, 0), 2.5, 1e-7);
}

TEST(Numerov, NodeCountIsMonotoneInEnergy) {
  const RadialProblem problem = coulomb();
  int previous = 0;
  for (double energy = -0.6; energy < -0.01; energy += 0.01) {
    const int nodes = count_nodes(problem, energy);
    EXPECT_GE(nodes, previous);
    previous = nodes;
  }
  EXPECT_EQ(count_nodes(problem, -0.6), 0);
  EXPECT_EQ(count_nodes(problem, -0.3), 1);
}

TEST(Numerov, ConvergesFasterThanSecondOrder) {
  auto error = [](int points) {
    RadialProblem problem = coulomb();
    problem.r_max = 40.0;
    problem.points = points;
    return std::fabs(numerov_eigen(problem, 0) + 0.5);
  };
  const double coarse = error(2000);
  const double fine = error(8000);
  EXPECT_GT(coarse / fine, 16.0);
}

TEST(Numerov, HydrogenInUnitSphereFrozen) {
  RadialProblem problem = coulomb();
  problem.r_max = 1.0;
  problem.points = 100000;
  EXPECT_NEAR(numerov_eigen(problem, 0), 2.374065336, 1e-8);
}

TEST(CriticalB, FormNames) {
  EXPECT_EQ(parse_coupling_form("rydberg"), CouplingForm::Rydberg);
  EXPECT_EQ(to_string(CouplingForm::Hartree), "hartree");
  EXPECT_THROW(parse_coupling_form("si"), std::invalid_argument);
}

TEST(CriticalB, HartreeFormValues) {
  EXPECT_NEAR(critical_b({1, 0}, CouplingForm::Hartree).critical_b, 0.325329, 2e-5);
  EXPECT_NEAR(critical_b({2, 1}, CouplingForm::Hartree).critical_b, 0.0077140, 2e-6);
  EXPECT_NEAR(critical_b({2, 0}, CouplingForm::Hartree).critical_b, 0.0048314, 2e-6);
}

TEST(CriticalB, FormsDifferByFactorTwo) {
  /// -Lap - 2/r + b r^2 is twice -Lap/2 - 1/r + (b/2) r^2.
  const double rydberg = critical_b({1, 0}, CouplingForm::Rydberg).critical_b;
  const double hartree = critical_b({1, 0}, CouplingForm::Hartree).critical_b;
  EXPECT_NEAR(rydberg, 2.0 * hartree, 2e-5);
}

}  // namespace
}  // namespace hydroconf
