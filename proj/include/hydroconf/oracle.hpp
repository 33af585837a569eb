#pragma once

#include <functional>
#include <string>

#include "hydroconf/basis.hpp"

namespace hydroconf {

/// -kinetic * u'' + (V(r) + kinetic * l(l+1)/r^2) u = E u on a uniform grid
/// over [r_min, r_max] with u(r_max) = 0. kinetic is 1/2 for Hartree units.
struct RadialProblem {
  std::function<double(double)> potential;
  int l = 0;
  double r_min = 1e-6;
  double r_max = 200.0;
  int points = 200000;
  double kinetic = 0.5;

  /// Throws std::invalid_argument on l < 0, r_min <= 0, r_max <= r_min,
  /// points < 1000, kinetic <= 0 or a missing potential.
  void validate() const;
};

/// Interior sign changes of the shooting solution at energy E.
int count_nodes(const RadialProblem& problem, double energy);

/// Energy of the state with `index` interior nodes, by node-count bisection
/// to 1e-9 absolute. The energy window widens geometrically until it brackets
/// the state; throws std::runtime_error if it never does.
double numerov_eigen(const RadialProblem& problem, int index);

/// Rydberg form:  -Lap - 2/r + b r^2.   Hartree form: -Lap/2 - 1/r + b r^2.
enum class CouplingForm { Rydberg, Hartree };

std::string to_string(CouplingForm form);
CouplingForm parse_coupling_form(const std::string& text);

struct CriticalBResult {
  double critical_b = 0.0;
  double r_max = 0.0;
  int iterations = 0;
};

/// Coupling b at which the orbital's level crosses zero, bisected to 1e-6
/// in b. The sign of the level at b is read from the node count at E = 0.
/// Runs on r_max = 40 n^2 with grid step `step`.
CriticalBResult critical_b(const Orbital& orbital, CouplingForm form, double step = 2e-3);

}  // namespace hydroconf
