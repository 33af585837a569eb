#pragma once

#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "hydroconf/exact.hpp"
#include "hydroconf/potential.hpp"

namespace hydroconf {

/// Raised for unknown keys and unparseable values; maps to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Every setting of a run. All keys have defaults; commands that need a
/// command-specific default leave the field empty and resolve it.
struct RunConfig {
  std::string command;

  std::string potential = "none";  // none | pgo | ho
  int order = 3;
  Rational lambda{0};
  Rational mu{0};
  Rational c2{0};

  int l = 0;
  int basis = 20;
  EnergyConvention convention = EnergyConvention::TableRydberg;
  std::string method;            // diagonalize | diagonal
  std::string engine = "gf";     // gf | closed
  double taylor_tol = 1e-14;
  int max_power = 60;

  std::string orbitals;   // comma separated labels
  std::string couplings;  // comma separated values
  int shell = 4;

  double r_min = 1.1;
  double r_max = 30.0;
  double r_step = 0.1;
  bool corrected = false;
  double prominence = 1e-4;
  std::string pair = "4d,3s";

  std::string form = "rydberg";  // rydberg | hartree
  double step = 2e-3;

  double half_width = 0.0;  // 0 means 6 / sqrt(mu)
  int segments = 1600;
  double e_min = 0.0;
  double e_max = 0.62;
  int e_points = 1000;
  double peak_prominence = 0.1;

  std::string output = "-";
  std::string json;
  int threads = 1;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

/// Keys in serialization order.
const std::vector<std::string>& config_keys();

/// Assigns one key; throws ConfigError for unknown keys or bad values.
void set_config_value(RunConfig& config, const std::string& key, const std::string& value);

std::string get_config_value(const RunConfig& config, const std::string& key);

/// Reads "key = value" lines. Blank lines are skipped; lines starting with
/// '#' are comments unless they hold "# key=value", the form used in output
/// headers, which is read like a plain line so that headers round-trip.
/// After such a header the first line that is not key=value ends the input,
/// so a whole CSV output file can be replayed. Keys seen go into `seen`.
void apply_config_text(RunConfig& config, const std::string& text, std::set<std::string>* seen = nullptr);

void apply_config_file(RunConfig& config, const std::string& path, std::set<std::string>* seen = nullptr);

/// "# key=value" lines for every key except the worker count.
std::string config_header(const RunConfig& config);

/// Comma separated numbers, or "start:stop:step" for an inclusive range.
std::vector<double> parse_number_list(const std::string& text);

std::vector<std::string> split_list(const std::string& text);

}  // namespace hydroconf
