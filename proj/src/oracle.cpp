#include "hydroconf/oracle.hpp"

#include <cmath>
#include <stdexcept>

namespace hydroconf {

namespace {

constexpr double kRescale = 1e100;

}  // namespace

void RadialProblem::validate() const {
  if (!potential) throw std::invalid_argument("radial problem has no potential");
  if (l < 0) throw std::invalid_argument("l must be non-negative");
  if (!(r_min > 0.0) || !(r_max > r_min)) throw std::invalid_argument("need 0 < r_min < r_max");
  if (points < 1000) throw std::invalid_argument("Numerov grid needs at least 1000 points");
  if (!(kinetic > 0.0)) throw std::invalid_argument("kinetic prefactor must be positive");
}

int count_nodes(const RadialProblem& problem, double energy) {
  problem.validate();
  const double h = (problem.r_max - problem.r_min) / (problem.points - 1);
  const double h2 = h * h / 12.0;
  const double centrifugal = problem.l * (problem.l + 1.0);
  auto g = [&](double r) {
    return (problem.potential(r) - energy) / problem.kinetic + centrifugal / (r * r);
  };

  // Start where the Numerov weights are well inside their stable range; the
  // solution there is still the regular power law r^{l+1}.
  int start = 0;
  while (start + 2 < problem.points && h2 * std::fabs(g(problem.r_min + start * h)) > 0.05) ++start;
  if (start + 2 >= problem.points) throw std::runtime_error("Numerov grid too coarse for this potential");

  // Frobenius start u = r^{l+1} (1 + a r / (2 kinetic (l+1))) with a = lim r V(r);
  // dropping the linear term would cost a full order of accuracy for Coulomb tails.
  const double coulomb = problem.r_min * problem.potential(problem.r_min);
  auto regular = [&](double r) {
    return std::pow(r, problem.l + 1) * (1.0 + coulomb * r / (2.0 * problem.kinetic * (problem.l + 1)));
  };
  double r_prev = problem.r_min + start * h;
  double r_curr = r_prev + h;
  double u_prev = regular(r_prev);
  double u_curr = regular(r_curr);
  double g_prev = g(r_prev);
  double g_curr = g(r_curr);

  int nodes = 0;
  for (int i = start + 2; i < problem.points; ++i) {
    const double r_next = problem.r_min + i * h;
    const double g_next = g(r_next);
    const double u_next =
        (2.0 * u_curr * (1.0 + 5.0 * h2 * g_curr) - u_prev * (1.0 - h2 * g_prev)) / (1.0 - h2 * g_next);
    // The last grid point is the wall itself and carries no interior node.
    if (i < problem.points - 1 && ((u_next < 0.0 && u_curr > 0.0) || (u_next > 0.0 && u_curr < 0.0))) ++nodes;
    if (i < problem.points - 1 && u_next == 0.0) ++nodes;
    u_prev = u_curr;
    u_curr = u_next;
    g_prev = g_curr;
    g_curr = g_next;
    if (std::fabs(u_curr) > kRescale) {
      u_prev /= kRescale;
      u_curr /= kRescale;
    }
  }
  return nodes;
}

double numerov_eigen(const RadialProblem& problem, int index) {
  problem.validate();
  if (index < 0) throw std::invalid_argument("state index must be non-negative");

  double low = -1.0;
  int widen = 0;
  while (count_nodes(problem, low) > index) {
    low *= 2.0;
    if (++widen > 200) throw std::runtime_error("no lower energy bracket for state " + std::to_string(index));
  }
  double high = 1.0;
  widen = 0;
  while (count_nodes(problem, high) <= index) {
    high *= 2.0;
    if (++widen > 200) throw std::runtime_error("state " + std::to_string(index) + " not bracketed");
  }
  while (high - low > 1e-9) {
    const double mid = 0.5 * (low + high);
    if (count_nodes(problem, mid) > index) {
      high = mid;
    } else {
      low = mid;
    }
  }
  return 0.5 * (low + high);
}

std::string to_string(CouplingForm form) { return form == CouplingForm::Rydberg ? "rydberg" : "hartree"; }

CouplingForm parse_coupling_form(const std::string& text) {
  if (text == "rydberg") return CouplingForm::Rydberg;
  if (text == "hartree") return CouplingForm::Hartree;
  throw std::invalid_argument("unknown coupling form '" + text + "' (expected rydberg or hartree)");
}

CriticalBResult critical_b(const Orbital& orbital, CouplingForm form, double step) {
  orbital.validate();
  if (!(step > 0.0)) throw std::invalid_argument("grid step must be positive");

  const bool rydberg = form == CouplingForm::Rydberg;
  const double charge = rydberg ? 2.0 : 1.0;
  RadialProblem problem;
  problem.l = orbital.l;
  problem.kinetic = rydberg ? 1.0 : 0.5;
  problem.r_max = 40.0 * orbital.n * orbital.n;
  problem.points = std::max(1000, static_cast<int>(std::ceil((problem.r_max - problem.r_min) / step)) + 1);

  const int index = orbital.n - orbital.l - 1;
  auto level_positive = [&](double b) {
    problem.potential = [charge, b](double r) { return -charge / r + b * r * r; };
    return count_nodes(problem, 0.0) <= index;
  };

  // First-order estimate: |free level| / <r^2>.
  const double free_level = (rydberg ? 1.0 : 0.5) / (orbital.n * orbital.n);
  const double r2 = 0.5 * orbital.n * orbital.n * (5.0 * orbital.n * orbital.n + 1.0 - 3.0 * orbital.l * (orbital.l + 1.0));
  double low = 0.0;
  double high = free_level / r2;
  int widen = 0;
  while (!level_positive(high)) {
    low = high;
    high *= 2.0;
    if (++widen > 60) throw std::runtime_error("no zero crossing for " + orbital.label());
  }

  CriticalBResult result;
  result.r_max = problem.r_max;
  while (high - low > 1e-6 * std::min(1.0, high) && result.iterations < 200) {
    const double mid = 0.5 * (low + high);
    if (level_positive(mid)) {
      high = mid;
    } else {
      low = mid;
    }
    ++result.iterations;
  }
  result.critical_b = 0.5 * (low + high);
  return result;
}

}  // namespace hydroconf
