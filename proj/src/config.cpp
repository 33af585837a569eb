#include "hydroconf/config.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <stdexcept>

namespace hydroconf {

namespace {

std::string trim(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = text.find_last_not_of(" \t\r\n");
  return std::string(text.substr(first, last - first + 1));
}

std::string format_double(double value) {
  char buffer[40];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

double parse_double(const std::string& key, const std::string& value) {
  double out = 0.0;
  const auto [end, error] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (error != std::errc() || end != value.data() + value.size() || !std::isfinite(out)) {
    throw ConfigError("key '" + key + "': not a number: '" + value + "'");
  }
  return out;
}

int parse_int(const std::string& key, const std::string& value) {
  int out = 0;
  const auto [end, error] = std::from_chars(value.data(), value.data() + value.size(), out);
  if (error != std::errc() || end != value.data() + value.size()) {
    throw ConfigError("key '" + key + "': not an integer: '" + value + "'");
  }
  return out;
}

bool parse_bool(const std::string& key, const std::string& value) {
  if (value == "true" || value == "1" || value == "yes") return true;
  if (value == "false" || value == "0" || value == "no") return false;
  throw ConfigError("key '" + key + "': not a boolean: '" + value + "'");
}

Rational parse_exact(const std::string& key, const std::string& value) {
  try {
    return parse_rational(value);
  } catch (const std::invalid_argument&) {
    throw ConfigError("key '" + key + "': not a number: '" + value + "'");
  }
}

struct Field {
  std::function<void(RunConfig&, const std::string&, const std::string&)> set;
  std::function<std::string(const RunConfig&)> get;
};

template <class T>
Field number_field(T RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& key, const std::string& value) {
            if constexpr (std::is_same_v<T, int>) {
              c.*member = parse_int(key, value);
            } else {
              c.*member = parse_double(key, value);
            }
          },
          [member](const RunConfig& c) {
            if constexpr (std::is_same_v<T, int>) {
              return std::to_string(c.*member);
            } else {
              return format_double(c.*member);
            }
          }};
}

Field exact_field(Rational RunConfig::*member) {
  return {[member](RunConfig& c, const std::string& key, const std::string& value) {
            c.*member = parse_exact(key, value);
          },
          [member](const RunConfig& c) { return to_string(c.*member); }};
}

Field text_field(std::string RunConfig::*member) {
  return {[member](RunConfig& c, const std::string&, const std::string& value) { c.*member = value; },
          [member](const RunConfig& c) { return c.*member; }};
}

Field choice_field(std::string RunConfig::*member, std::initializer_list<const char*> allowed, bool allow_empty) {
  std::vector<const char*> options(allowed);
  return {[member, options, allow_empty](RunConfig& c, const std::string& key, const std::string& value) {
            if (allow_empty && value.empty()) {
              c.*member = value;
              return;
            }
            for (const char* option : options) {
              if (value == option) {
                c.*member = value;
                return;
              }
            }
            std::string list;
            for (const char* option : options) list += (list.empty() ? "" : ", ") + std::string(option);
            throw ConfigError("key '" + key + "': '" + value + "' is not one of " + list);
          },
          [member](const RunConfig& c) { return c.*member; }};
}

const std::vector<std::pair<std::string, Field>>& fields() {
  static const std::vector<std::pair<std::string, Field>> table = {
      {"command", text_field(&RunConfig::command)},
      {"potential", choice_field(&RunConfig::potential, {"none", "pgo", "ho"}, false)},
      {"order", number_field(&RunConfig::order)},
      {"lambda", exact_field(&RunConfig::lambda)},
      {"mu", exact_field(&RunConfig::mu)},
      {"c2", exact_field(&RunConfig::c2)},
      {"l", number_field(&RunConfig::l)},
      {"basis", number_field(&RunConfig::basis)},
      {"convention",
       {[](RunConfig& c, const std::string& key, const std::string& value) {
          try {
            c.convention = parse_convention(value);
          } catch (const std::invalid_argument& e) {
            throw ConfigError("key '" + key + "': " + e.what());
          }
        },
        [](const RunConfig& c) { return to_string(c.convention); }}},
      {"method", choice_field(&RunConfig::method, {"diagonalize", "diagonal"}, true)},
      {"engine", choice_field(&RunConfig::engine, {"gf", "closed"}, false)},
      {"taylor_tol", number_field(&RunConfig::taylor_tol)},
      {"max_power", number_field(&RunConfig::max_power)},
      {"orbitals", text_field(&RunConfig::orbitals)},
      {"couplings", text_field(&RunConfig::couplings)},
      {"shell", number_field(&RunConfig::shell)},
      {"r_min", number_field(&RunConfig::r_min)},
      {"r_max", number_field(&RunConfig::r_max)},
      {"r_step", number_field(&RunConfig::r_step)},
      {"corrected",
       {[](RunConfig& c, const std::string& key, const std::string& value) { c.corrected = parse_bool(key, value); },
        [](const RunConfig& c) { return std::string(c.corrected ? "true" : "false"); }}},
      {"prominence", number_field(&RunConfig::prominence)},
      {"pair", text_field(&RunConfig::pair)},
      {"form", choice_field(&RunConfig::form, {"rydberg", "hartree"}, false)},
      {"step", number_field(&RunConfig::step)},
      {"half_width", number_field(&RunConfig::half_width)},
      {"segments", number_field(&RunConfig::segments)},
      {"e_min", number_field(&RunConfig::e_min)},
      {"e_max", number_field(&RunConfig::e_max)},
      {"e_points", number_field(&RunConfig::e_points)},
      {"peak_prominence", number_field(&RunConfig::peak_prominence)},
      {"output", text_field(&RunConfig::output)},
      {"json", text_field(&RunConfig::json)},
      {"threads", number_field(&RunConfig::threads)},
  };
  return table;
}

const Field& field(const std::string& key) {
  for (const auto& [name, f] : fields()) {
    if (name == key) return f;
  }
  throw ConfigError("unknown config key '" + key + "'");
}

}  // namespace

const std::vector<std::string>& config_keys() {
  static const std::vector<std::string> keys = [] {
    std::vector<std::string> out;
    for (const auto& [name, f] : fields()) out.push_back(name);
    return out;
  }();
  return keys;
}

void set_config_value(RunConfig& config, const std::string& key, const std::string& value) {
  field(key).set(config, key, trim(value));
}

std::string get_config_value(const RunConfig& config, const std::string& key) { return field(key).get(config); }

void apply_config_text(RunConfig& config, const std::string& text, std::set<std::string>* seen) {
  std::istringstream in(text);
  std::string line;
  int number = 0;
  bool header = false;
  while (std::getline(in, line)) {
    ++number;
    std::string body = trim(line);
    if (body.empty()) continue;
    if (body.front() == '#') {
      body = trim(std::string_view(body).substr(1));
      const auto eq = body.find('=');
      // Free-form comments have no key=value shape.
      if (eq == std::string::npos || body.find(' ') < eq) continue;
      header = true;
    }
    const auto eq = body.find('=');
    // The column row of a CSV ends its header block.
    if (eq == std::string::npos && header && line.front() != '#') break;
    if (eq == std::string::npos) {
      throw ConfigError("line " + std::to_string(number) + ": expected key=value, got '" + body + "'");
    }
    const std::string key = trim(std::string_view(body).substr(0, eq));
    set_config_value(config, key, body.substr(eq + 1));
    if (seen) seen->insert(key);
  }
}

void apply_config_file(RunConfig& config, const std::string& path, std::set<std::string>* seen) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::ostringstream text;
  text << in.rdbuf();
  apply_config_text(config, text.str(), seen);
}

std::string config_header(const RunConfig& config) {
  std::string out;
  for (const auto& [name, f] : fields()) {
    // Worker count never changes results, so it stays out of the provenance block.
    if (name == "threads") continue;
    out += "# " + name + "=" + f.get(config) + "\n";
  }
  return out;
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, ',')) {
    item = trim(item);
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

std::vector<double> parse_number_list(const std::string& text) {
  const std::string body = trim(text);
  if (body.find(':') != std::string::npos) {
    std::vector<std::string> parts;
    std::istringstream in(body);
    std::string part;
    while (std::getline(in, part, ':')) parts.push_back(trim(part));
    if (parts.size() != 3) throw ConfigError("range must be start:stop:step, got '" + text + "'");
    const double start = parse_double("range", parts[0]);
    const double stop = parse_double("range", parts[1]);
    const double step = parse_double("range", parts[2]);
    if (!(step > 0.0) || stop < start) throw ConfigError("range needs step > 0 and stop >= start: '" + text + "'");
    const long count = std::lround(std::floor((stop - start) / step + 1e-9)) + 1;
    std::vector<double> out;
    for (long i = 0; i < count; ++i) out.push_back(start + static_cast<double>(i) * step);
    return out;
  }
  std::vector<double> out;
  for (const auto& item : split_list(body)) out.push_back(parse_double("list", item));
  return out;
}

}  // namespace hydroconf
