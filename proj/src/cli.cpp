#include "hydroconf/cli.hpp"

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "hydroconf/basis.hpp"
#include "hydroconf/genfunc.hpp"
#include "hydroconf/hardwall.hpp"
#include "hydroconf/oracle.hpp"
#include "hydroconf/parallel.hpp"
#include "hydroconf/scattering.hpp"
#include "hydroconf/spectrum.hpp"

namespace hydroconf::cli {

namespace {

std::string format_cell(const Cell& cell) {
  if (const auto* value = std::get_if<double>(&cell)) {
    char buffer[40];
    std::snprintf(buffer, sizeof buffer, "%.9e", *value);
    return buffer;
  }
  if (const auto* value = std::get_if<int>(&cell)) return std::to_string(*value);
  return std::get<std::string>(cell);
}

nlohmann::json cell_json(const Cell& cell) {
  if (const auto* value = std::get_if<double>(&cell)) return *value;
  if (const auto* value = std::get_if<int>(&cell)) return *value;
  return std::get<std::string>(cell);
}

unsigned worker_count(const RunConfig& config) { return static_cast<unsigned>(std::max(1, config.threads)); }

ConfinementSpec confinement(const RunConfig& config) {
  ConfinementSpec spec;
  spec.convention = config.convention;
  if (config.potential == "pgo") {
    spec.kind = PgoParams{config.order, config.lambda, config.mu};
  } else if (config.potential == "ho") {
    spec.kind = HoParams{config.c2};
  }
  return spec;
}

LevelMethod level_method(const RunConfig& config) {
  return config.method == "diagonal" ? LevelMethod::DiagonalElements : LevelMethod::Diagonalization;
}

SpectrumOptions spectrum_options(const RunConfig& config) {
  SpectrumOptions options;
  options.method = level_method(config);
  options.engine = config.engine == "closed" ? MomentEngine::ClosedForm : MomentEngine::GeneratingFunctional;
  options.max_power = config.max_power;
  options.taylor_tol = config.taylor_tol;
  options.threads = worker_count(config);
  return options;
}

std::vector<Orbital> orbital_list(const std::string& text) {
  std::vector<Orbital> out;
  for (const auto& label : split_list(text)) {
    try {
      out.push_back(Orbital::parse(label));
    } catch (const std::invalid_argument& e) {
      throw ConfigError(e.what());
    }
  }
  if (out.empty()) throw ConfigError("no orbitals given");
  return out;
}

std::vector<double> radius_grid(const RunConfig& config) {
  if (!(config.r_step > 0.0) || config.r_max < config.r_min) throw ConfigError("bad radius grid");
  std::ostringstream range;
  range.precision(17);
  range << config.r_min << ":" << config.r_max << ":" << config.r_step;
  return parse_number_list(range.str());
}

HardWallSettings wall_settings(const RunConfig& config) {
  HardWallSettings settings;
  settings.basis_size = config.basis;
  settings.corrected = config.corrected;
  settings.convention = config.convention;
  settings.prominence = config.prominence;
  settings.threads = worker_count(config);
  return settings;
}

Table spectrum_command(const RunConfig& config) {
  const SpectrumResult result = spectrum(confinement(config), BasisWindow{config.l, config.basis},
                                         spectrum_options(config));
  Table table;
  table.columns = {"n", "l", "energy", "energy_ev"};
  const auto ev = result.ev_values();
  for (std::size_t i = 0; i < result.eigenvalues.size(); ++i) {
    table.rows.push_back({result.basis.principal(static_cast<int>(i)), config.l, result.eigenvalues[i], ev[i]});
  }
  table.extra["series_terms"] = result.series.terms.size();
  return table;
}

Table table1_command(const RunConfig& config) {
  const BasisWindow basis{0, config.basis};
  const SpectrumOptions options = spectrum_options(config);
  auto levels = [&](ConfinementSpec spec) {
    spec.convention = config.convention;
    return spectrum(spec, basis, options).eigenvalues;
  };
  const auto free = levels({});
  const auto pgo3 = levels({PgoParams{3, config.lambda, config.mu}, {}, config.convention});
  const auto pgo18 = levels({PgoParams{18, config.lambda, config.mu}, {}, config.convention});
  const auto ho = levels({HoParams{config.c2}, {}, config.convention});

  Table table;
  table.columns = {"n", "free", "pgo_s3", "pgo_s18", "ho"};
  for (int i = 0; i < basis.size; ++i) {
    const auto idx = static_cast<std::size_t>(i);
    table.rows.push_back({basis.principal(i), free[idx], pgo3[idx], pgo18[idx], ho[idx]});
  }
  return table;
}

Table critical_command(const RunConfig& config) {
  Table table;
  table.columns = {"orbital", "first_order", "first_order_exact", "diagonalization"};
  const auto orbitals = orbital_list(config.orbitals);
  std::vector<CriticalCouplingResult> diagonal(orbitals.size());
  parallel_for(orbitals.size(), worker_count(config), [&](std::size_t i) {
    diagonal[i] = critical_coupling(orbitals[i], CriticalMethod::Diagonalization,
                                    BasisWindow{orbitals[i].l, config.basis}, config.convention);
  });
  for (std::size_t i = 0; i < orbitals.size(); ++i) {
    const Rational exact = first_order_critical(orbitals[i], config.convention);
    table.rows.push_back({orbitals[i].label(), to_double(exact), to_string(exact), diagonal[i].critical_value});
  }
  return table;
}

Table degeneracy_command(const RunConfig& config) {
  const auto couplings = parse_number_list(config.couplings);
  const DegeneracyTable scan =
      degeneracy_scan(config.shell, couplings, config.basis, config.convention, worker_count(config));
  Table table;
  table.columns = {"c2"};
  for (int l = 0; l < config.shell; ++l) table.columns.push_back(Orbital{config.shell, l}.label());
  for (std::size_t c = 0; c < couplings.size(); ++c) {
    std::vector<Cell> row{couplings[c]};
    for (double e : scan.energies[c]) row.emplace_back(e);
    table.rows.push_back(std::move(row));
  }
  return table;
}

Table hardwall_command(const RunConfig& config) {
  const auto radii = radius_grid(config);
  const auto couplings = parse_number_list(config.couplings);
  const HardWallSettings settings = wall_settings(config);

  Table table;
  table.columns = {"orbital", "coupling", "radius", "energy"};
  table.extra["scans"] = nlohmann::json::array();
  for (const auto& orbital : orbital_list(config.orbitals)) {
    const RScanResult scan = r_scan(orbital, radii, couplings, settings);
    nlohmann::json summary;
    summary["orbital"] = orbital.label();
    summary["regions"] = nlohmann::json::array();
    for (std::size_t c = 0; c < couplings.size(); ++c) {
      for (std::size_t r = 0; r < radii.size(); ++r) {
        table.rows.push_back({orbital.label(), couplings[c], radii[r], scan.energies[c][r]});
      }
      const auto& regions = scan.regions[c];
      summary["regions"].push_back({{"coupling", couplings[c]},
                                    {"plateau_end", regions.plateau_end},
                                    {"threshold", regions.threshold},
                                    {"threshold_found", regions.threshold_found}});
    }
    summary["minima"] = nlohmann::json::array();
    for (const auto& m : scan.minima) {
      summary["minima"].push_back({{"coupling", m.coupling}, {"radius", m.radius}, {"energy", m.energy}});
      table.notes.push_back(orbital.label() + ": minimum at R=" + format_cell(m.radius) +
                            " for coupling " + format_cell(m.coupling));
    }
    table.extra["scans"].push_back(summary);
  }
  return table;
}

Table crossing_command(const RunConfig& config) {
  const auto labels = orbital_list(config.pair);
  if (labels.size() != 2) throw ConfigError("pair needs exactly two orbitals, e.g. 4d,3s");
  const auto radii = radius_grid(config);
  const auto couplings = parse_number_list(config.couplings);
  if (couplings.size() != 1) throw ConfigError("crossing takes a single coupling");
  const HardWallSettings settings = wall_settings(config);

  const auto first = r_scan(labels[0], radii, couplings, settings);
  const auto second = r_scan(labels[1], radii, couplings, settings);
  const auto crossings = crossing_detect({labels[0], labels[1]}, radii, couplings[0], settings);

  Table table;
  table.columns = {"radius", labels[0].label(), labels[1].label(), "gap"};
  for (std::size_t r = 0; r < radii.size(); ++r) {
    const double a = first.energies[0][r];
    const double b = second.energies[0][r];
    table.rows.push_back({radii[r], a, b, a - b});
  }
  table.extra["crossings"] = crossings;
  table.notes.push_back(std::to_string(crossings.size()) + " crossing(s) of " + labels[0].label() + " and " +
                        labels[1].label());
  return table;
}

PiecewiseBarrier transmission_barrier(const RunConfig& config) {
  if (config.potential != "pgo") throw ConfigError("transmission needs potential=pgo");
  if (!(sgn(config.mu) > 0)) throw ConfigError("transmission needs mu > 0");
  const PgoParams params{config.order, config.lambda, config.mu};
  const double half_width = config.half_width > 0.0 ? config.half_width : 6.0 / std::sqrt(to_double(config.mu));
  return discretize([params](double x) { return pgo_value(params, std::fabs(x)); }, -half_width, half_width,
                    config.segments);
}

Table transmission_command(const RunConfig& config) {
  if (config.e_points < 3 || !(config.e_max > config.e_min)) throw ConfigError("bad energy grid");
  const PiecewiseBarrier barrier = transmission_barrier(config);
  std::vector<double> energies;
  for (int i = 1; i <= config.e_points; ++i) {
    energies.push_back(config.e_min + (config.e_max - config.e_min) * i / config.e_points);
  }
  const TransmissionCurve curve = resonances(barrier, energies, config.peak_prominence, worker_count(config));

  Table table;
  table.columns = {"energy", "transmission"};
  for (std::size_t i = 0; i < energies.size(); ++i) table.rows.push_back({curve.energies[i], curve.transmission[i]});
  table.extra["barrier_top"] = barrier.max_value();
  table.extra["peak_count"] = curve.peaks.size();
  table.extra["peaks"] = nlohmann::json::array();
  for (const auto& peak : curve.peaks) {
    table.extra["peaks"].push_back({{"energy", peak.energy}, {"height", peak.height}, {"prominence", peak.prominence}});
  }
  table.notes.push_back(std::to_string(curve.peaks.size()) + " resonance peak(s)");
  return table;
}

Table oracle_command(const RunConfig& config) {
  const CouplingForm form = parse_coupling_form(config.form);
  const auto orbitals = orbital_list(config.orbitals);
  std::vector<CriticalBResult> results(orbitals.size());
  parallel_for(orbitals.size(), worker_count(config),
               [&](std::size_t i) { results[i] = critical_b(orbitals[i], form, config.step); });

  Table table;
  table.columns = {"orbital", "form", "critical_b", "first_order_b"};
  for (std::size_t i = 0; i < orbitals.size(); ++i) {
    const EnergyConvention convention =
        form == CouplingForm::Rydberg ? EnergyConvention::TableRydberg : EnergyConvention::Hartree;
    table.rows.push_back({orbitals[i].label(), to_string(form), results[i].critical_b,
                          to_double(first_order_critical(orbitals[i], convention))});
  }
  return table;
}

struct Check {
  std::string name;
  bool passed;
  std::string detail;
};

std::string number(double value) { return format_cell(value); }

std::vector<Check> validation_suite(unsigned threads) {
  std::vector<Check> checks;

  {
    const auto levels = spectrum({}, BasisWindow{0, 20}).eigenvalues;
    double worst = 0.0;
    for (int i = 0; i < 20; ++i) worst = std::max(worst, std::fabs(levels[i] + 1.0 / ((i + 1.0) * (i + 1.0))));
    checks.push_back({"free_atom_levels", worst <= 1e-12, "max deviation " + number(worst)});
  }
  {
    int mismatches = 0;
    for (int l = 0; l <= 3; ++l) {
      for (int a = l + 1; a <= 8; ++a) {
        for (int b = l + 1; b <= 8; ++b) {
          for (int k : {-1, 0, 2, 8}) {
            if (!(gf_matrix_element(a, b, l, k) == exact_moment(a, b, l, k))) ++mismatches;
          }
        }
      }
    }
    checks.push_back({"generating_functional_exact", mismatches == 0, std::to_string(mismatches) + " mismatches"});
  }
  {
    double worst = 0.0;
    for (int l = 0; l <= 2; ++l) {
      for (int a = l + 1; a <= 6; ++a) {
        for (int b = l + 1; b <= 6; ++b) {
          for (int k : {-1, 2, 8}) {
            const double exact = exact_moment(a, b, l, k).to_double();
            const double scale = std::sqrt(exact_moment(a, a, l, k).to_double() * exact_moment(b, b, l, k).to_double());
            worst = std::max(worst, std::fabs(quadrature_moment(a, b, l, k) - exact) / scale);
          }
        }
      }
    }
    checks.push_back({"quadrature_moments", worst <= 1e-10, "max relative deviation " + number(worst)});
  }
  {
    RadialProblem hydrogen;
    hydrogen.potential = [](double r) { return -1.0 / r; };
    const double ground = numerov_eigen(hydrogen, 0);
    checks.push_back({"numerov_hydrogen", std::fabs(ground + 0.5) <= 1e-6, "1s " + number(ground)});

    RadialProblem oscillator;
    oscillator.potential = [](double r) { return 0.5 * r * r; };
    oscillator.r_max = 10.0;
    oscillator.points = 20000;
    const double zero_point = numerov_eigen(oscillator, 0);
    checks.push_back({"numerov_oscillator", std::fabs(zero_point - 1.5) <= 1e-6, "k=0 " + number(zero_point)});
  }
  {
    // Rydberg-table levels with c2 r^2 are twice the Hartree levels with (c2/2) r^2.
    const double c2 = 1e-6;
    ConfinementSpec spec{HoParams{parse_rational("1e-6")}, std::nullopt, EnergyConvention::TableRydberg};
    const auto levels = spectrum(spec, BasisWindow{0, 20}).eigenvalues;
    RadialProblem problem;
    problem.potential = [c2](double r) { return -1.0 / r + 0.5 * c2 * r * r; };
    problem.r_max = 120.0;
    problem.points = 240000;
    double worst = 0.0;
    for (int index = 0; index < 2; ++index) {
      worst = std::max(worst, std::fabs(levels[static_cast<std::size_t>(index)] - 2.0 * numerov_eigen(problem, index)));
    }
    checks.push_back({"weak_coupling_vs_numerov", worst <= 1e-6, "max deviation " + number(worst)});
  }
  {
    const Rational critical = first_order_critical(Orbital{1, 0}, EnergyConvention::TableRydberg);
    checks.push_back({"first_order_1s", critical == Rational(1, 3), "1s " + to_string(critical)});
  }
  {
    HardWallProblem problem;
    problem.radius = 40.0 * 25.0;
    problem.basis = BasisWindow{0, 5};
    problem.convention = EnergyConvention::TableRydberg;
    const auto levels = hardwall_spectrum(problem).eigenvalues;
    double worst = 0.0;
    for (int i = 0; i < 5; ++i) worst = std::max(worst, std::fabs(levels[i] + 1.0 / ((i + 1.0) * (i + 1.0))));
    checks.push_back({"hardwall_free_limit", worst <= 1e-8, "max deviation " + number(worst)});
  }
  {
    const PiecewiseBarrier flat = discretize([](double) { return 0.0; }, 0.0, 10.0, 50);
    double worst = 0.0;
    for (int i = 1; i <= 100; ++i) worst = std::max(worst, std::fabs(transmission(flat, 0.05 * i) - 1.0));
    checks.push_back({"transmission_free", worst <= 1e-12, "max deviation " + number(worst)});

    PiecewiseBarrier square;
    square.breakpoints = {0.0, 1.0};
    square.values = {1.0};
    const double energy = 0.5;
    const double kappa = std::sqrt(2.0 * (1.0 - energy));
    const double analytic = 1.0 / (1.0 + std::pow(std::sinh(kappa), 2) / (4.0 * energy * (1.0 - energy)));
    const double computed = transmission(square, energy);
    checks.push_back({"transmission_square_barrier", std::fabs(computed - analytic) <= 1e-10,
                      "T " + number(computed) + " vs " + number(analytic)});
  }
  (void)threads;
  return checks;
}

Table validate_command(const RunConfig& config) {
  Table table;
  table.columns = {"check", "status", "detail"};
  for (const auto& check : validation_suite(worker_count(config))) {
    table.rows.push_back({check.name, std::string(check.passed ? "PASS" : "FAIL"), check.detail});
    table.notes.push_back(std::string(check.passed ? "PASS " : "FAIL ") + check.name + ": " + check.detail);
    if (!check.passed) table.failed = true;
  }
  return table;
}

using Command = Table (*)(const RunConfig&);

const std::map<std::string, std::pair<Command, std::string>>& command_table() {
  static const std::map<std::string, std::pair<Command, std::string>> table = {
      {"spectrum", {spectrum_command, "Levels of one l window under the configured confinement"}},
      {"table1", {table1_command, "Free, PGO s=3, PGO s=18 and harmonic levels side by side"}},
      {"critical", {critical_command, "Critical r^2 couplings, first order and by diagonalization"}},
      {"degeneracy", {degeneracy_command, "Splitting of one shell over a coupling grid"}},
      {"hardwall", {hardwall_command, "Level of an orbital versus hard-wall radius"}},
      {"crossing", {crossing_command, "Two levels versus wall radius and their crossings"}},
      {"transmission", {transmission_command, "Transmission through the PGO barrier"}},
      {"oracle", {oracle_command, "Numerov critical b for the chosen form"}},
      {"validate", {validate_command, "Internal cross-checks; exit 1 on any failure"}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& commands() {
  static const std::vector<std::string> names = [] {
    std::vector<std::string> out;
    for (const auto& [name, entry] : command_table()) out.push_back(name);
    return out;
  }();
  return names;
}

RunConfig resolve(RunConfig config, const std::set<std::string>& seen) {
  if (!command_table().contains(config.command)) throw ConfigError("unknown command '" + config.command + "'");
  auto fallback = [&](const std::string& key, const std::string& value) {
    if (!seen.contains(key)) set_config_value(config, key, value);
  };
  const std::string& command = config.command;
  fallback("method", command == "table1" ? "diagonal" : "diagonalize");
  if (command == "table1") {
    fallback("mu", "2e-6");
    fallback("c2", "1e-6");
  } else if (command == "critical") {
    fallback("orbitals", "1s,2s,2p,3s,3p,3d,4s,4p,4d,4f");
  } else if (command == "degeneracy") {
    fallback("couplings", "0:1e-5:1e-6");
  } else if (command == "hardwall") {
    fallback("orbitals", "1s");
    fallback("couplings", "1e-5,0.05,0.1,0.2,0.7");
    fallback("convention", "hartree");
  } else if (command == "crossing") {
    fallback("couplings", "1e-5");
    fallback("convention", "hartree");
    fallback("r_max", "60");
    fallback("r_step", "0.25");
  } else if (command == "oracle") {
    fallback("orbitals", "1s,2p");
  }
  return config;
}

Table run_command(const RunConfig& config) {
  const auto it = command_table().find(config.command);
  if (it == command_table().end()) throw ConfigError("unknown command '" + config.command + "'");
  if (config.basis < 1 || config.basis > 60) throw ConfigError("basis must lie in [1, 60]");
  if (config.threads < 1) throw ConfigError("threads must be positive");
  return it->second.first(config);
}

std::string render_csv(const RunConfig& config, const Table& table) {
  std::string out = config_header(config);
  for (std::size_t c = 0; c < table.columns.size(); ++c) out += (c ? "," : "") + table.columns[c];
  out += "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out += (c ? "," : "") + format_cell(row[c]);
    out += "\n";
  }
  return out;
}

nlohmann::json render_json(const RunConfig& config, const Table& table) {
  nlohmann::json doc;
  doc["schema_version"] = kJsonSchemaVersion;
  doc["command"] = config.command;
  nlohmann::json params = nlohmann::json::object();
  for (const auto& key : config_keys()) {
    if (key != "threads") params[key] = get_config_value(config, key);
  }
  doc["config"] = params;
  doc["columns"] = table.columns;
  doc["rows"] = nlohmann::json::array();
  for (const auto& row : table.rows) {
    nlohmann::json cells = nlohmann::json::array();
    for (const auto& cell : row) cells.push_back(cell_json(cell));
    doc["rows"].push_back(cells);
  }
  doc["extra"] = table.extra;
  return doc;
}

int run(int argc, char** argv) {
  CLI::App app{"Confined hydrogen spectra, hard-wall scans and barrier transmission"};
  app.require_subcommand(1);
  std::string config_path;
  app.add_option("--config", config_path, "Flat key=value file; flags override it");
  std::map<std::string, std::string> flags;
  for (const auto& key : config_keys()) {
    if (key == "command") continue;
    app.add_option("--" + key, flags[key]);
  }
  for (const auto& [name, entry] : command_table()) app.add_subcommand(name, entry.second)->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitBadConfig;
  }

  RunConfig config;
  config.threads = static_cast<int>(default_threads());
  Table table;
  try {
    std::set<std::string> seen;
    if (!config_path.empty()) apply_config_file(config, config_path, &seen);
    for (const auto& [key, value] : flags) {
      if (app.get_option("--" + key)->count() > 0) {
        set_config_value(config, key, value);
        seen.insert(key);
      }
    }
    config.command = app.get_subcommands().front()->get_name();
    config = resolve(config, seen);
    table = run_command(config);
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::invalid_argument& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return kExitBadConfig;
  } catch (const std::exception& e) {
    std::cerr << "failed: " << e.what() << "\n";
    return kExitFailure;
  }

  const std::string csv = render_csv(config, table);
  if (config.output == "-") {
    std::cout << csv;
  } else {
    std::ofstream out(config.output);
    if (!(out << csv)) {
      std::cerr << "cannot write " << config.output << "\n";
      return kExitFailure;
    }
  }
  if (!config.json.empty()) {
    std::ofstream out(config.json);
    if (!(out << render_json(config, table).dump(2) << "\n")) {
      std::cerr << "cannot write " << config.json << "\n";
      return kExitFailure;
    }
  }
  for (const auto& note : table.notes) std::cerr << note << "\n";
  return table.failed ? kExitFailure : kExitOk;
}

}  // namespace hydroconf::cli
