#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "hydroconf/basis.hpp"
#include "hydroconf/config.hpp"
#include "hydroconf/genfunc.hpp"
#include "hydroconf/hardwall.hpp"
#include "hydroconf/oracle.hpp"
#include "hydroconf/scattering.hpp"
#include "hydroconf/spectrum.hpp"

using namespace hydroconf;

namespace {

struct Outcome {
  bool passed = false;
  std::string detail;
  std::vector<std::string> info;
};

struct Criterion {
  int id;
  std::string name;
  double time_limit;
  std::function<Outcome()> body;
};

std::string fmt(const char* format, double value) {
  char buffer[64];
  std::snprintf(buffer, sizeof buffer, format, value);
  return buffer;
}

/// Printed reference columns, n = 1..20.
const double kTableFree[20] = {-1.000000, -0.250000, -0.111111, -0.062500, -0.040000, -0.027778, -0.020408,
                               -0.015625, -0.012346, -0.010000, -0.008264, -0.006944, -0.005917, -0.005102,
                               -0.004444, -0.003906, -0.003460, -0.003086, -0.002770, -0.002500};
const double kTablePgo3[20] = {-0.999994, -0.249916, -0.110697, -0.061204, -0.036850, -0.021262, -0.008354,
                               0.004919,  0.020540,  0.040100,  0.065062,  0.096880,  0.137057,  0.187174,
                               0.248906,  0.324030,  0.414433,  0.522114,  0.649180,  0.797828};
const double kTablePgo18[20] = {-0.999994, -0.249916, -0.110697, -0.061204, -0.036850, -0.021262, -0.008354,
                                0.004919,  0.020540,  0.040100,  0.065062,  0.096879,  0.137056,  0.187172,
                                0.248897,  0.323999,  0.414335,  0.521829,  0.648406,  0.795860};
const double kTableHo[20] = {-0.999997, -0.249958, -0.110904, -0.061852, -0.038425, -0.024520, -0.014381,
                             -0.005353, 0.004097,  0.015050,  0.028399,  0.044968,  0.065570,  0.091036,
                             0.122231,  0.160062,  0.205487,  0.259516,  0.323213,  0.397700};

constexpr double kTableAllTol = 1e-4;
constexpr double kTableLowTol = 2e-6;
constexpr int kTableLowRows = 7;

std::vector<double> table_column(const ConfinementSpec& spec) {
  SpectrumOptions options;
  options.method = LevelMethod::DiagonalElements;
  return spectrum(spec, {0, 20}, options).eigenvalues;
}

/// Returns max deviation over all rows and over the first-order rows.
std::pair<double, double> column_deviation(const std::vector<double>& levels, const double* printed) {
  double all = 0.0;
  double low = 0.0;
  for (int i = 0; i < 20; ++i) {
    const double dev = std::fabs(levels[i] - printed[i]);
    all = std::max(all, dev);
    if (i < kTableLowRows) low = std::max(low, dev);
  }
  return {all, low};
}

Outcome free_atom() {
  const auto levels = spectrum({}, {0, 20}).eigenvalues;
  double worst = 0.0;
  for (int n = 1; n <= 20; ++n) worst = std::max(worst, std::fabs(levels[n - 1] + 1.0 / (n * n)));
  double printed = 0.0;
  for (int n = 1; n <= 20; ++n) printed = std::max(printed, std::fabs(levels[n - 1] - kTableFree[n - 1]));
  return {worst <= 1e-12, "max |dE| " + fmt("%.2e", worst),
          {"printed free column matches to " + fmt("%.1e", printed)}};
}

Outcome table_ho() {
  const auto levels = table_column({HoParams{parse_rational("1e-6")}});
  const auto [all, low] = column_deviation(levels, kTableHo);
  Outcome out{all <= kTableAllTol && low <= kTableLowTol,
              "max |dE| all " + fmt("%.2e", all) + ", n<=7 " + fmt("%.2e", low), {}};
  const auto ritz = spectrum({HoParams{parse_rational("1e-6")}}, {0, 20}).eigenvalues;
  const auto [ritz_all, ritz_low] = column_deviation(ritz, kTableHo);
  out.info.push_back("diagonalized levels instead: all " + fmt("%.2e", ritz_all) + ", n<=7 " + fmt("%.2e", ritz_low));
  return out;
}

Outcome table_pgo() {
  const Rational mu = parse_rational("2e-6");
  const auto s3 = table_column({PgoParams{3, Rational(0), mu}});
  const auto s18 = table_column({PgoParams{18, Rational(0), mu}});
  const auto [all3, low3] = column_deviation(s3, kTablePgo3);
  const auto [all18, low18] = column_deviation(s18, kTablePgo18);
  double agree = 0.0;
  for (int i = 0; i < 11; ++i) agree = std::max(agree, std::fabs(s3[i] - s18[i]));
  const double gap20 = s3[19] - s18[19];
  const bool columns = all3 <= kTableAllTol && low3 <= kTableLowTol && all18 <= kTableAllTol && low18 <= kTableLowTol;
  const bool pattern = agree <= 1e-6 && gap20 > 0.0 && gap20 <= 2.5e-3;
  Outcome out{columns && pattern,
              "s=3 all " + fmt("%.2e", all3) + " n<=7 " + fmt("%.2e", low3) + "; s=18 all " + fmt("%.2e", all18) +
                  " n<=7 " + fmt("%.2e", low18) + "; n<=11 agreement " + fmt("%.2e", agree) + "; n=20 gap " +
                  fmt("%.3e", gap20),
              {}};
  out.info.push_back("s=3 n=20 " + fmt("%.6f", s3[19]) + " (printed 0.797828), s=18 n=20 " + fmt("%.6f", s18[19]) +
                     " (printed 0.795860)");
  const auto limit = table_column({HoParams{mu}});
  const auto [limit_all, limit_low] = column_deviation(limit, kTablePgo3);
  out.info.push_back("pure mu r^2 limit n=20 " + fmt("%.6f", limit[19]) + "; limit vs printed s=3 column: all " +
                     fmt("%.2e", limit_all) + ", n<=7 " + fmt("%.2e", limit_low));
  return out;
}

Outcome critical_table() {
  const std::vector<std::pair<const char*, double>> printed = {
      {"1s", 1.0 / 3.0}, {"2s", 0.005953}, {"2p", 0.008334}, {"3s", 0.000537}, {"3p", 0.000618},
      {"3d", 0.000882},  {"4s", 0.000097}, {"4p", 0.000105}, {"4d", 0.000125}, {"4f", 0.000173}};
  /// Two significant digits read as 1% relative agreement.
  constexpr double kRelative = 0.01;
  double worst = 0.0;
  std::string worst_label;
  for (const auto& [label, value] : printed) {
    const double computed = to_double(first_order_critical(Orbital::parse(label), EnergyConvention::TableRydberg));
    const double rel = std::fabs(computed - value) / value;
    if (rel > worst) {
      worst = rel;
      worst_label = label;
    }
  }
  const bool exact = first_order_critical({1, 0}, EnergyConvention::TableRydberg) == Rational(1, 3);
  return {exact && worst <= kRelative,
          "1s exactly 1/3: " + std::string(exact ? "yes" : "no") + "; worst relative " + fmt("%.2e", worst) + " (" +
              worst_label + ")",
          {}};
}

Outcome oracle_critical_b() {
  const double b1s = critical_b({1, 0}, CouplingForm::Rydberg).critical_b;
  const double b2p = critical_b({2, 1}, CouplingForm::Rydberg).critical_b;
  const double rel1s = std::fabs(b1s - 0.32533) / 0.32533;
  const double rel2p = std::fabs(b2p - 0.00771) / 0.00771;
  Outcome out{rel1s <= 0.005 && rel2p <= 0.02,
              "rydberg form 1s " + fmt("%.6f", b1s) + " (rel " + fmt("%.2e", rel1s) + "), 2p " + fmt("%.6f", b2p) +
                  " (rel " + fmt("%.2e", rel2p) + ")",
              {}};
  const double h1s = critical_b({1, 0}, CouplingForm::Hartree).critical_b;
  const double h2p = critical_b({2, 1}, CouplingForm::Hartree).critical_b;
  out.info.push_back("hartree form 1s " + fmt("%.6f", h1s) + " (rel " + fmt("%.2e", std::fabs(h1s - 0.32533) / 0.32533) +
                     "), 2p " + fmt("%.6f", h2p) + " (rel " + fmt("%.2e", std::fabs(h2p - 0.00771) / 0.00771) + ")");
  return out;
}

Outcome gf_equivalence() {
  int mismatches = 0;
  int checked = 0;
  double worst = 0.0;
  for (int l = 0; l <= 3; ++l) {
    for (int a = l + 1; a <= 12; ++a) {
      for (int b = l + 1; b <= 12; ++b) {
        for (int k : {-1, 0, 2, 8, 10, 12, 14}) {
          const Surd exact = exact_moment(a, b, l, k);
          if (!(gf_matrix_element(a, b, l, k) == exact)) ++mismatches;
          ++checked;
          /// Relative to the Cauchy-Schwarz bound, since off-diagonal elements may vanish.
          const double scale =
              std::sqrt(exact_moment(a, a, l, k).to_double() * exact_moment(b, b, l, k).to_double());
          worst = std::max(worst, std::fabs(quadrature_moment(a, b, l, k) - exact.to_double()) / scale);
        }
      }
    }
  }
  return {mismatches == 0 && worst <= 1e-10,
          std::to_string(checked) + " elements, " + std::to_string(mismatches) +
              " exact mismatches, quadrature worst relative " + fmt("%.2e", worst),
          {}};
}

Outcome degeneracy() {
  std::vector<double> grid;
  for (int i = 0; i < 10; ++i) grid.push_back(1e-5 * i / 9.0);
  const auto table = degeneracy_scan(4, grid, 20);
  double zero_dev = 0.0;
  for (double e : table.energies.front()) zero_dev = std::max(zero_dev, std::fabs(e + 1.0 / 16.0));
  const auto& top = table.energies.back();
  const bool ordered = top[0] > top[1] && top[1] > top[2] && top[2] > top[3];
  bool monotone = true;
  for (std::size_t c = 1; c < grid.size(); ++c) {
    for (int l = 0; l < 4; ++l) monotone = monotone && table.energies[c][l] >= table.energies[c - 1][l];
  }
  return {ordered && monotone && zero_dev <= 1e-10,
          std::string("4s>4p>4d>4f at 1e-5: ") + (ordered ? "yes" : "no") + "; zero-coupling dev " +
              fmt("%.2e", zero_dev) + "; monotone: " + (monotone ? "yes" : "no"),
          {"c2=1e-5 levels " + fmt("%.6f", top[0]) + " " + fmt("%.6f", top[1]) + " " + fmt("%.6f", top[2]) + " " +
           fmt("%.6f", top[3])}};
}

std::vector<double> radius_grid(double from, double to, double step) {
  std::vector<double> radii;
  for (int i = 0; from + i * step <= to + 1e-9; ++i) radii.push_back(from + i * step);
  return radii;
}

Outcome hard_wall() {
  const std::vector<double> couplings{1e-5, 5e-2, 1e-1, 2e-1, 7e-1};
  const std::vector<bool> want_minimum{false, true, true, true, false};
  const auto radii = radius_grid(1.01, 30.0, 0.1);
  HardWallSettings settings;
  const RScanResult scan = r_scan({1, 0}, radii, couplings, settings);

  bool structure = true;
  std::string minima;
  for (std::size_t c = 0; c < couplings.size(); ++c) {
    const bool found = std::any_of(scan.minima.begin(), scan.minima.end(),
                                   [&](const ScanMinimum& m) { return m.coupling == couplings[c]; });
    structure = structure && found == want_minimum[c];
    minima += fmt("%g", couplings[c]) + (found ? ":min " : ":none ");
  }
  const double free = atom_level(1, settings.convention);
  const auto& weak = scan.energies[0];
  const bool settles = scan.regions[0].threshold_found && std::fabs(weak.back() - free) <= 1e-3;

  Outcome out{structure && settles,
              minima + "; c2=1e-5 settles from R_h=" + fmt("%.2f", scan.regions[0].threshold) + " at " +
                  fmt("%.5f", weak.back()),
              {}};
  std::string plateau = "plateau at R=1.01 (hartree, uncorrected):";
  bool in_band = false;
  for (std::size_t c = 1; c < 4; ++c) {
    plateau += " " + fmt("%.4f", scan.energies[c][0]);
    in_band = in_band || std::fabs(scan.energies[c][0] + 0.25) <= 0.05;
  }
  out.info.push_back(plateau + (in_band ? " (within -1/4 +- 0.05)" : " (outside -1/4 +- 0.05)"));
  HardWallSettings table_units = settings;
  table_units.convention = EnergyConvention::TableRydberg;
  const std::vector<double> one{1e-1};
  const std::vector<double> first{1.01, 1.11};
  out.info.push_back("plateau at R=1.01 (rydberg-table, uncorrected) c2=0.1: " +
                     fmt("%.4f", r_scan({1, 0}, first, one, table_units).energies[0][0]));
  HardWallSettings corrected = settings;
  corrected.corrected = true;
  try {
    r_scan({1, 0}, first, one, corrected);
    out.info.push_back("corrected variant solved at R=1.01");
  } catch (const std::exception& e) {
    out.info.push_back(std::string("corrected variant: ") + e.what());
  }
  return out;
}

Outcome crossings() {
  const auto radii = radius_grid(1.01, 60.0, 0.25);
  HardWallSettings settings;
  const auto first = crossing_detect({Orbital{4, 2}, Orbital{3, 0}}, radii, 1e-5, settings);
  const auto second = crossing_detect({Orbital{5, 4}, Orbital{4, 3}}, radii, 1e-5, settings);
  Outcome out{!first.empty() && !second.empty(),
              "(4d,3s) " + std::to_string(first.size()) + " crossing(s), (5g,4f) " + std::to_string(second.size()) +
                  " crossing(s)",
              {}};
  for (double r : first) out.info.push_back("(4d,3s) crossing at R=" + fmt("%.3f", r));
  for (double r : second) out.info.push_back("(5g,4f) crossing at R=" + fmt("%.3f", r));
  return out;
}

Outcome transmission_checks() {
  const auto flat = discretize([](double) { return 0.0; }, -10.0, 10.0, 100);
  double flat_dev = 0.0;
  for (int i = 1; i <= 1000; ++i) flat_dev = std::max(flat_dev, std::fabs(transmission(flat, 0.002 * i) - 1.0));

  PiecewiseBarrier square;
  square.breakpoints = {0.0, 2.0};
  square.values = {1.0};
  double square_dev = 0.0;
  for (int i = 1; i <= 99; ++i) {
    const double energy = 0.01 * i;
    const double kappa = std::sqrt(2.0 * (1.0 - energy));
    const double analytic = 1.0 / (1.0 + std::pow(std::sinh(2.0 * kappa), 2) / (4.0 * energy * (1.0 - energy)));
    square_dev = std::max(square_dev, std::fabs(transmission(square, energy) - analytic));
  }

  RunConfig preset;
  apply_config_file(preset, std::string(HYDROCONF_PRESET_DIR) + "/figure_ta.conf");
  const PgoParams params{preset.order, preset.lambda, preset.mu};
  const auto barrier = discretize([&](double x) { return pgo_value(params, std::fabs(x)); }, -preset.half_width,
                                  preset.half_width, preset.segments);
  std::vector<double> energies;
  for (int i = 1; i <= preset.e_points; ++i) {
    energies.push_back(preset.e_min + (preset.e_max - preset.e_min) * i / preset.e_points);
  }
  const auto curve = resonances(barrier, energies, preset.peak_prominence);
  std::string peaks;
  for (const auto& p : curve.peaks) peaks += " " + fmt("%.4f", p.energy);
  return {flat_dev <= 1e-12 && square_dev <= 1e-10 && curve.peaks.size() == 4,
          "free dev " + fmt("%.2e", flat_dev) + ", square dev " + fmt("%.2e", square_dev) + ", preset peaks " +
              std::to_string(curve.peaks.size()),
          {"preset resonance energies:" + peaks}};
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "free-atom exactness", 1.0, free_atom},
      {2, "reference table, HO column", 5.0, table_ho},
      {3, "reference table, PGO columns", 5.0, table_pgo},
      {4, "first-order critical couplings", 1.0, critical_table},
      {5, "Numerov critical b", 30.0, oracle_critical_b},
      {6, "generating functional vs closed form vs quadrature", 60.0, gf_equivalence},
      {7, "degeneracy lifting", 10.0, degeneracy},
      {8, "hard-wall structure", 120.0, hard_wall},
      {9, "crossing states", 120.0, crossings},
      {10, "transmission", 10.0, transmission_checks},
  };
  int failures = 0;
  for (const auto& criterion : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome outcome;
    try {
      outcome = criterion.body();
    } catch (const std::exception& e) {
      outcome = {false, std::string("threw: ") + e.what(), {}};
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < criterion.time_limit;
    const bool passed = outcome.passed && in_time;
    if (!passed) ++failures;
    std::printf("%s %2d %s: %s [%.2fs of %.0fs]\n", passed ? "PASS" : "FAIL", criterion.id, criterion.name.c_str(),
                outcome.detail.c_str(), seconds, criterion.time_limit);
    for (const auto& line : outcome.info) std::printf("     info: %s\n", line.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
