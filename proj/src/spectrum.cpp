#include "hydroconf/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <tuple>

#include "hydroconf/genfunc.hpp"
#include "hydroconf/parallel.hpp"

namespace hydroconf {

namespace {

using MomentKey = std::tuple<int, int, int, MomentEngine>;

std::mutex& moment_cache_mutex() {
  static std::mutex mutex;
  return mutex;
}

std::map<MomentKey, Eigen::MatrixXd>& moment_cache() {
  static std::map<MomentKey, Eigen::MatrixXd> cache;
  return cache;
}

double tracked_level(const Eigen::MatrixXd& atom, const Eigen::MatrixXd& m2, double coupling, int index) {
  OperatorMatrix h;
  h.size = static_cast<int>(atom.rows());
  h.entries = atom + coupling * m2;
  return eigenvalues(h)[static_cast<std::size_t>(index)];
}

Eigen::MatrixXd atom_diagonal(const BasisWindow& basis, EnergyConvention convention) {
  Eigen::MatrixXd atom = Eigen::MatrixXd::Zero(basis.size, basis.size);
  for (int i = 0; i < basis.size; ++i) atom(i, i) = atom_level(basis.principal(i), convention);
  return atom;
}

}  // namespace

Eigen::MatrixXd moment_matrix(const BasisWindow& basis, int k, MomentEngine engine, unsigned threads) {
  basis.validate();
  const MomentKey key{basis.l, basis.size, k, engine};
  {
    std::lock_guard lock(moment_cache_mutex());
    if (auto it = moment_cache().find(key); it != moment_cache().end()) return it->second;
  }

  const int size = basis.size;
  std::vector<std::pair<int, int>> pairs;
  for (int i = 0; i < size; ++i) {
    for (int j = i; j < size; ++j) pairs.emplace_back(i, j);
  }
  std::vector<double> values(pairs.size());
  parallel_for(pairs.size(), threads, [&](std::size_t idx) {
    const int n_bra = basis.principal(pairs[idx].first);
    const int n_ket = basis.principal(pairs[idx].second);
    const Surd element = engine == MomentEngine::GeneratingFunctional
                             ? gf_matrix_element(n_bra, n_ket, basis.l, k)
                             : exact_moment(n_bra, n_ket, basis.l, k);
    values[idx] = element.to_double();
  });

  Eigen::MatrixXd matrix(size, size);
  for (std::size_t idx = 0; idx < pairs.size(); ++idx) {
    const auto [i, j] = pairs[idx];
    matrix(i, j) = values[idx];
    matrix(j, i) = values[idx];
  }

  std::lock_guard lock(moment_cache_mutex());
  moment_cache().emplace(key, matrix);
  return matrix;
}

OperatorMatrix assemble(const BasisWindow& basis, const PowerSeriesPotential& series,
                        EnergyConvention convention, MomentEngine engine, unsigned threads) {
  basis.validate();
  for (const auto& term : series.terms) {
    if (term.power < 0 || term.power % 2 != 0) {
      throw std::invalid_argument("series powers must be even and non-negative, got " +
                                  std::to_string(term.power));
    }
  }

  OperatorMatrix h;
  h.l = basis.l;
  h.size = basis.size;
  h.convention = convention;
  h.entries = atom_diagonal(basis, convention);
  for (const auto& term : series.terms) {
    h.powers.push_back(term.power);
    const double t = term.value();
    if (term.power == 0) {
      h.entries.diagonal().array() += t;
      continue;
    }
    h.entries += t * moment_matrix(basis, term.power, engine, threads);
  }
  return h;
}

std::vector<double> eigenvalues(const OperatorMatrix& matrix) {
  const Eigen::MatrixXd& h = matrix.entries;
  if (h.rows() != h.cols()) throw std::invalid_argument("eigenvalues needs a square matrix");
  if (!h.allFinite()) throw std::invalid_argument("matrix has non-finite entries");

  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(h);
  if (solver.info() != Eigen::Success) throw std::runtime_error("symmetric eigensolver did not converge");

  const double norm = h.norm();
  const auto& values = solver.eigenvalues();
  const auto& vectors = solver.eigenvectors();
  for (Eigen::Index i = 0; i < values.size(); ++i) {
    const double residual = (h * vectors.col(i) - values(i) * vectors.col(i)).norm();
    if (residual > 1e-10 * std::max(norm, 1e-300)) {
      throw std::runtime_error("eigenpair residual " + std::to_string(residual) + " exceeds tolerance");
    }
  }
  return {values.data(), values.data() + values.size()};
}

std::vector<double> SpectrumResult::ev_values() const {
  const double factor = kRydbergEnergyEv * 2.0 / convention_scale(params.convention);
  std::vector<double> out;
  out.reserve(eigenvalues.size());
  for (double e : eigenvalues) out.push_back(e * factor);
  return out;
}

SpectrumResult spectrum(const ConfinementSpec& spec, const BasisWindow& basis, const SpectrumOptions& options) {
  spec.validate();
  basis.validate();
  if (spec.hard_wall) throw std::invalid_argument("hard-wall problems are solved by hardwall_spectrum");

  SpectrumResult result;
  result.params = spec;
  result.basis = basis;
  result.method = options.method;
  result.series = taylor_coefficients(spec, options.max_power, options.taylor_tol,
                                      truncation_radius(basis.l, basis.size));

  const OperatorMatrix h = assemble(basis, result.series, spec.convention, options.engine, options.threads);
  if (options.method == LevelMethod::Diagonalization) {
    result.eigenvalues = eigenvalues(h);
  } else {
    const Eigen::VectorXd diagonal = h.entries.diagonal();
    result.eigenvalues.assign(diagonal.begin(), diagonal.end());
  }
  return result;
}

double first_order_shift(const Orbital& orbital, const PowerSeriesPotential& series) {
  orbital.validate();
  double shift = 0.0;
  for (const auto& term : series.terms) {
    if (term.power == 0) {
      shift += term.value();
      continue;
    }
    shift += term.value() * exact_moment(orbital.n, orbital.n, orbital.l, term.power).to_double();
  }
  return shift;
}

Rational first_order_critical(const Orbital& orbital, EnergyConvention convention) {
  orbital.validate();
  const Rational r2 = exact_moment(orbital.n, orbital.n, orbital.l, 2).rational_value();
  return Rational(-atom_level_exact(orbital.n, convention) / r2);
}

CriticalCouplingResult critical_coupling(const Orbital& orbital, CriticalMethod method,
                                         const BasisWindow& basis, EnergyConvention convention) {
  orbital.validate();
  CriticalCouplingResult result;
  result.orbital = orbital;
  result.method = method;

  const double estimate = to_double(first_order_critical(orbital, convention));
  if (method == CriticalMethod::FirstOrder) {
    result.critical_value = estimate;
    result.bracket = {estimate, estimate};
    return result;
  }

  basis.validate();
  if (basis.l != orbital.l) throw std::invalid_argument("basis window l differs from the orbital's l");
  const int index = basis.index_of(orbital.n);
  if (index < 0 || index >= basis.size) throw std::invalid_argument("orbital lies outside the basis window");

  const Eigen::MatrixXd atom = atom_diagonal(basis, convention);
  const Eigen::MatrixXd m2 = moment_matrix(basis, 2);

  double low = 0.0;
  double high = estimate;
  int expansions = 0;
  while (tracked_level(atom, m2, high, index) <= 0.0) {
    low = high;
    high *= 2.0;
    if (++expansions > 40) {
      throw std::runtime_error("no sign change of the " + orbital.label() + " level over the coupling scan");
    }
  }

  constexpr int kMaxIterations = 60;
  int iterations = 0;
  double mid = 0.5 * (low + high);
  for (; iterations < kMaxIterations; ++iterations) {
    mid = 0.5 * (low + high);
    const double level = tracked_level(atom, m2, mid, index);
    if (level < 0.0) {
      low = mid;
    } else {
      high = mid;
    }
    if (std::fabs(level) < 1e-8 && high - low < 1e-8 * estimate) break;
  }
  result.critical_value = 0.5 * (low + high);
  result.bracket = {low, high};
  result.iterations = iterations;
  return result;
}

DegeneracyTable degeneracy_scan(int n, std::span<const double> couplings, int basis_size,
                                EnergyConvention convention, unsigned threads) {
  if (n < 2) throw std::invalid_argument("degeneracy scan needs n >= 2");
  if (basis_size < n) throw std::invalid_argument("basis window too small for the requested shell");

  DegeneracyTable table;
  table.n = n;
  table.couplings.assign(couplings.begin(), couplings.end());
  table.energies.assign(couplings.size(), std::vector<double>(static_cast<std::size_t>(n)));

  std::vector<Eigen::MatrixXd> atoms;
  std::vector<Eigen::MatrixXd> m2s;
  for (int l = 0; l < n; ++l) {
    const BasisWindow window{l, basis_size};
    atoms.push_back(atom_diagonal(window, convention));
    m2s.push_back(moment_matrix(window, 2, MomentEngine::GeneratingFunctional, threads));
  }
  parallel_for(couplings.size(), threads, [&](std::size_t c) {
    for (int l = 0; l < n; ++l) {
      table.energies[c][static_cast<std::size_t>(l)] =
          tracked_level(atoms[static_cast<std::size_t>(l)], m2s[static_cast<std::size_t>(l)], couplings[c],
                        n - l - 1);
    }
  });
  return table;
}

}  // namespace hydroconf
