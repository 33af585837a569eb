#include "hydroconf/basis.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

namespace hydroconf {

namespace {

constexpr const char* kSpectroscopic = "spdfghiklmnoqrtuvwxyz";

// Monomial coefficients of L_p^a(x): sum_j (-1)^j C(p+a, p-j) x^j / j!
std::vector<Rational> laguerre_monomials(int p, int a) {
  std::vector<Rational> coeffs(static_cast<std::size_t>(p) + 1);
  for (int j = 0; j <= p; ++j) {
    Rational c(binomial(static_cast<unsigned>(p + a), static_cast<unsigned>(p - j)), factorial(j));
    c.canonicalize();
    coeffs[static_cast<std::size_t>(j)] = (j % 2 == 0) ? c : Rational(-c);
  }
  return coeffs;
}

Rational rational_power(const Rational& base, int exponent) {
  Rational result = 1;
  for (int i = 0; i < exponent; ++i) result *= base;
  return result;
}

void check_moment_args(int n_bra, int n_ket, int l, int k) {
  Orbital{n_bra, l}.validate();
  Orbital{n_ket, l}.validate();
  if (k < -1) throw std::invalid_argument("radial moments are supported for k >= -1");
}

double panel_sum(int n_bra, int n_ket, int l, int k, double upper, double width, bool absolute) {
  const auto& rule = gauss_legendre(32);
  const int panels = std::max(1, static_cast<int>(std::ceil(upper / width)));
  const double h = upper / panels;
  const Orbital bra{n_bra, l};
  const Orbital ket{n_ket, l};
  double sum = 0.0;
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      const double r = mid + 0.5 * h * rule.nodes[q];
      double f = std::pow(r, 2 + k) * radial_eval(bra, r) * radial_eval(ket, r);
      if (absolute) f = std::fabs(f);
      sum += 0.5 * h * rule.weights[q] * f;
    }
  }
  return sum;
}

}  // namespace

void Orbital::validate() const {
  if (n < 1 || l < 0 || l >= n) {
    throw std::invalid_argument("invalid orbital n=" + std::to_string(n) + " l=" + std::to_string(l));
  }
}

std::string Orbital::label() const {
  const std::string letters = kSpectroscopic;
  if (l < static_cast<int>(letters.size())) return std::to_string(n) + letters[static_cast<std::size_t>(l)];
  return std::to_string(n) + "[l=" + std::to_string(l) + "]";
}

Orbital Orbital::parse(const std::string& label) {
  std::size_t pos = 0;
  while (pos < label.size() && std::isdigit(static_cast<unsigned char>(label[pos]))) ++pos;
  if (pos == 0 || pos + 1 != label.size()) throw std::invalid_argument("bad orbital label '" + label + "'");
  const auto letter = std::string(kSpectroscopic).find(static_cast<char>(std::tolower(label[pos])));
  if (letter == std::string::npos) throw std::invalid_argument("bad orbital label '" + label + "'");
  Orbital orbital{std::stoi(label.substr(0, pos)), static_cast<int>(letter)};
  orbital.validate();
  return orbital;
}

void BasisWindow::validate() const {
  if (l < 0) throw std::invalid_argument("negative orbital quantum number");
  if (size < 1) throw std::invalid_argument("basis size must be >= 1");
}

double laguerre(int degree, double alpha, double x) {
  if (degree < 0) throw std::invalid_argument("negative Laguerre degree");
  double previous = 1.0;
  if (degree == 0) return previous;
  double current = 1.0 + alpha - x;
  for (int k = 1; k < degree; ++k) {
    const double next = ((2.0 * k + 1.0 + alpha - x) * current - (k + alpha) * previous) / (k + 1.0);
    previous = current;
    current = next;
  }
  return current;
}

double radial_normalization(int n, int l) {
  // (n-l-1)!/(n+l)! = 1 / prod_{j=n-l}^{n+l} j
  double ratio = 1.0;
  for (int j = n - l; j <= n + l; ++j) ratio /= j;
  return 2.0 / (static_cast<double>(n) * n) * std::sqrt(ratio);
}

double radial_eval(const Orbital& orbital, double r) {
  orbital.validate();
  if (r < 0.0) throw std::invalid_argument("radial_eval needs r >= 0");
  const int n = orbital.n;
  const int l = orbital.l;
  const double x = 2.0 * r / n;
  return radial_normalization(n, l) * std::exp(-r / n) * std::pow(x, l) * laguerre(n - l - 1, 2.0 * l + 1.0, x);
}

Surd exact_moment(int n_bra, int n_ket, int l, int k) {
  check_moment_args(n_bra, n_ket, l, k);
  const auto bra = laguerre_monomials(n_bra - l - 1, 2 * l + 1);
  const auto ket = laguerre_monomials(n_ket - l - 1, 2 * l + 1);
  const Rational alpha(n_bra + n_ket, n_bra * n_ket);
  const Rational two_bra(2, n_bra);
  const Rational two_ket(2, n_ket);

  Rational sum = 0;
  for (std::size_t i = 0; i < bra.size(); ++i) {
    const Rational bra_term = bra[i] * rational_power(two_bra, l + static_cast<int>(i));
    for (std::size_t j = 0; j < ket.size(); ++j) {
      const int m = 2 + k + 2 * l + static_cast<int>(i + j);
      const Rational integral = Rational(factorial(static_cast<unsigned>(m))) / rational_power(alpha, m + 1);
      sum += bra_term * ket[j] * rational_power(two_ket, l + static_cast<int>(j)) * integral;
    }
  }
  const long nn = static_cast<long>(n_bra) * n_bra * n_ket * n_ket;
  const Rational prefactor(4, nn);
  Rational radicand(factorial(n_bra - l - 1) * factorial(n_ket - l - 1),
                    factorial(n_bra + l) * factorial(n_ket + l));
  radicand.canonicalize();
  return Surd(Rational(sum * prefactor), radicand);
}

const GaussLegendreRule& gauss_legendre(int order) {
  if (order < 1) throw std::invalid_argument("Gauss-Legendre order must be >= 1");
  static std::mutex mutex;
  static std::map<int, GaussLegendreRule> cache;
  std::lock_guard lock(mutex);
  if (auto it = cache.find(order); it != cache.end()) return it->second;

  GaussLegendreRule rule;
  rule.nodes.resize(static_cast<std::size_t>(order));
  rule.weights.resize(static_cast<std::size_t>(order));
  const int half = (order + 1) / 2;
  for (int i = 0; i < half; ++i) {
    double z = std::cos(std::numbers::pi * (i + 0.75) / (order + 0.5));
    double derivative = 0.0;
    for (int iter = 0; iter < 100; ++iter) {
      double p1 = 1.0;
      double p2 = 0.0;
      for (int j = 1; j <= order; ++j) {
        const double p3 = p2;
        p2 = p1;
        p1 = ((2.0 * j - 1.0) * z * p2 - (j - 1.0) * p3) / j;
      }
      derivative = order * (z * p1 - p2) / (z * z - 1.0);
      const double step = p1 / derivative;
      z -= step;
      if (std::fabs(step) < 1e-16) break;
    }
    const double w = 2.0 / ((1.0 - z * z) * derivative * derivative);
    rule.nodes[static_cast<std::size_t>(i)] = -z;
    rule.nodes[static_cast<std::size_t>(order - 1 - i)] = z;
    rule.weights[static_cast<std::size_t>(i)] = w;
    rule.weights[static_cast<std::size_t>(order - 1 - i)] = w;
  }
  return cache.emplace(order, std::move(rule)).first->second;
}

double integration_cutoff(int n_bra, int n_ket, int l, int k) {
  const double degree = 2.0 + k + 2.0 * l + (n_bra - l - 1) + (n_ket - l - 1);
  const double alpha = 1.0 / n_bra + 1.0 / n_ket;
  const double peak = std::max(degree / alpha, 1.0);
  auto log_envelope = [&](double r) { return degree * std::log(r / peak) - alpha * (r - peak); };
  double r = peak + 1.0 / alpha;
  while (log_envelope(r) > -80.0) r += std::max(1.0, 0.25 * r);
  return r;
}

double quadrature_moment(int n_bra, int n_ket, int l, int k, double upper) {
  check_moment_args(n_bra, n_ket, l, k);
  if (!(upper > 0.0)) throw std::invalid_argument("quadrature upper limit must be positive");
  const double limit = std::isinf(upper) ? integration_cutoff(n_bra, n_ket, l, k)
                                         : std::min(upper, integration_cutoff(n_bra, n_ket, l, k));

  double width = 0.5 * std::max(n_bra, n_ket);
  const double scale = panel_sum(n_bra, n_ket, l, k, limit, width, true);
  double previous = panel_sum(n_bra, n_ket, l, k, limit, width, false);
  for (int level = 0; level < 8; ++level) {
    width *= 0.5;
    const double current = panel_sum(n_bra, n_ket, l, k, limit, width, false);
    if (std::fabs(current - previous) <= 1e-12 * scale) return current;
    previous = current;
  }
  throw std::runtime_error("quadrature_moment did not converge for n'=" + std::to_string(n_bra) +
                           " n=" + std::to_string(n_ket) + " l=" + std::to_string(l) +
                           " k=" + std::to_string(k));
}

RadialGrid tabulate(const BasisWindow& basis, double upper, double panel_width, int order) {
  basis.validate();
  if (!(upper > 0.0) || !(panel_width > 0.0)) throw std::invalid_argument("bad tabulation range");
  const auto& rule = gauss_legendre(order);
  const int panels = std::max(1, static_cast<int>(std::ceil(upper / panel_width)));
  const double h = upper / panels;

  RadialGrid grid;
  grid.radii.reserve(static_cast<std::size_t>(panels) * rule.nodes.size());
  for (int p = 0; p < panels; ++p) {
    const double mid = (p + 0.5) * h;
    for (std::size_t q = 0; q < rule.nodes.size(); ++q) {
      grid.radii.push_back(mid + 0.5 * h * rule.nodes[q]);
      grid.weights.push_back(0.5 * h * rule.weights[q]);
    }
  }
  grid.values.resize(static_cast<std::size_t>(basis.size));
  for (int i = 0; i < basis.size; ++i) {
    const Orbital orbital{basis.principal(i), basis.l};
    auto& row = grid.values[static_cast<std::size_t>(i)];
    row.reserve(grid.radii.size());
    for (double r : grid.radii) row.push_back(radial_eval(orbital, r));
  }
  return grid;
}

}  // namespace hydroconf
