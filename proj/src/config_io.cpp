#include "pocketgrip/config_io.hpp"

#include <algorithm>
#include <array>
#include <charconv>
#include <cmath>
#include <fstream>
#include <limits>
#include <sstream>

#include "pocketgrip/errors.hpp"
#include "pocketgrip/table.hpp"

namespace pocketgrip {

namespace {

enum class Dim { None, Pressure, Length, Mass, Force, Time };

struct Unit {
  std::string_view name;
  Dim dim;
  double scale;
};

// Longest names first so suffix matching prefers "kPa" over "Pa".
constexpr std::array<Unit, 9> kUnits{{
    {"kPa", Dim::Pressure, 1e3},
    {"MPa", Dim::Pressure, 1e6},
    {"Pa", Dim::Pressure, 1.0},
    {"mm", Dim::Length, 1e-3},
    {"kg", Dim::Mass, 1.0},
    {"m", Dim::Length, 1.0},
    {"g", Dim::Mass, 1e-3},
    {"N", Dim::Force, 1.0},
    {"s", Dim::Time, 1.0},
}};

const Unit* find_unit(std::string_view name) {
  for (const auto& u : kUnits)
    if (u.name == name) return &u;
  return nullptr;
}

enum class Kind { Real, Integer, Seed, List };

struct KeySpec {
  std::string_view section;
  std::string_view key;
  Dim dim;
  Kind kind;
  bool required;
};

constexpr std::array<KeySpec, 30> kKeys{{
    {"membrane", "sigma0", Dim::Pressure, Kind::Real, true},
    {"membrane", "t", Dim::Length, Kind::Real, true},
    {"membrane", "a", Dim::Length, Kind::Real, true},
    {"membrane", "E", Dim::Pressure, Kind::Real, true},
    {"membrane", "nu", Dim::None, Kind::Real, true},
    {"membrane", "h_max", Dim::Length, Kind::Real, true},
    {"membrane", "g", Dim::Length, Kind::Real, true},
    {"membrane", "E0", Dim::Pressure, Kind::Real, true},
    {"membrane", "eta", Dim::None, Kind::Real, true},
    {"membrane", "tau_s", Dim::Pressure, Kind::Real, true},
    {"membrane", "mu_rim", Dim::None, Kind::Real, false},
    {"plant", "volts_to_pascals", Dim::None, Kind::Real, false},
    {"plant", "pressure_tau", Dim::Time, Kind::Real, false},
    {"plant", "settle_band", Dim::None, Kind::Real, false},
    {"plant", "loadcell_sigma", Dim::Force, Kind::Real, false},
    {"plant", "mu_sigma", Dim::None, Kind::Real, false},
    {"plant", "timestep", Dim::Time, Kind::Real, false},
    {"plant", "seed", Dim::None, Kind::Seed, false},
    {"plant", "close_rate", Dim::None, Kind::Real, false},
    {"plant", "hold_time", Dim::Time, Kind::Real, false},
    {"plant", "lift_time", Dim::Time, Kind::Real, false},
    {"plant", "transport_time", Dim::Time, Kind::Real, false},
    {"plant", "transport_factor", Dim::None, Kind::Real, false},
    {"grasp", "mass", Dim::Mass, Kind::Real, false},
    {"grasp", "gravity", Dim::None, Kind::Real, false},
    {"grasp", "contacts", Dim::None, Kind::Integer, false},
    {"grasp", "bulges", Dim::None, Kind::Integer, false},
    {"grasp", "safety_factor", Dim::None, Kind::Real, false},
    {"sweep", "n_grid", Dim::Force, Kind::List, true},
    {"sweep", "p_grid", Dim::Pressure, Kind::List, true},
}};

const KeySpec* find_key(std::string_view section, std::string_view key) {
  for (const auto& k : kKeys)
    if (k.section == section && k.key == key) return &k;
  return nullptr;
}

bool known_section(std::string_view name) {
  return name == "membrane" || name == "plant" || name == "sweep" || name == "grasp";
}

std::string_view trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t");
  return s.substr(b, e - b + 1);
}

bool valid_identifier(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(), [](char c) {
    return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') || (c >= '0' && c <= '9') || c == '_';
  });
}

// Splits "125 kPa" / "125kPa" into number text and unit name.
std::pair<std::string_view, std::string_view> split_unit(std::string_view token) {
  const auto space = token.find_first_of(" \t");
  if (space != std::string_view::npos) return {trim(token.substr(0, space)), trim(token.substr(space))};
  double ignored = 0.0;
  if (parse_number(token, ignored)) return {token, {}};
  for (const auto& u : kUnits) {
    if (token.size() > u.name.size() && token.substr(token.size() - u.name.size()) == u.name)
      return {token.substr(0, token.size() - u.name.size()), u.name};
  }
  return {token, {}};
}

ConfigValue parse_value(std::string_view rhs, std::size_t line) {
  ConfigValue value;
  value.line = line;
  std::vector<std::string_view> items;
  std::size_t start = 0;
  while (true) {
    const auto comma = rhs.find(',', start);
    items.push_back(trim(rhs.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }

  auto [last_number, unit_name] = split_unit(items.back());
  items.back() = last_number;
  double scale = 1.0;
  if (!unit_name.empty()) {
    const Unit* unit = find_unit(unit_name);
    if (!unit) throw ParseError(line, "unknown unit '" + std::string(unit_name) + "'");
    value.unit = std::string(unit_name);
    scale = unit->scale;
  }

  for (auto item : items) {
    double v = 0.0;
    if (item.empty()) throw ParseError(line, "empty value");
    if (!parse_number(item, v)) throw ParseError(line, "not a number: '" + std::string(item) + "'");
    value.raw.emplace_back(item);
    value.numbers.push_back(v * scale);
  }
  return value;
}

class Loader {
 public:
  explicit Loader(const ConfigDocument& doc) : doc_(doc) {}

  LoadedConfig load() {
    for (const auto& [section, keys] : doc_.sections) {
      for (const auto& [key, value] : keys) {
        const KeySpec* spec = find_key(section, key);
        if (!spec) throw UnknownKey(value.line, section + "." + key);
        check_shape(*spec, value);
      }
    }

    LoadedConfig out;
    if (!doc_.sections.contains("membrane")) throw ValidationError("membrane", std::nullopt, "section is required");
    auto& m = out.membrane;
    real("membrane", "sigma0", m.sigma0);
    real("membrane", "t", m.t);
    real("membrane", "a", m.a);
    real("membrane", "E", m.E);
    real("membrane", "nu", m.nu);
    real("membrane", "h_max", m.h_max);
    real("membrane", "g", m.g);
    real("membrane", "E0", m.E0);
    real("membrane", "eta", m.eta);
    real("membrane", "tau_s", m.tau_s);
    real("membrane", "mu_rim", m.mu_rim);
    validated("membrane", [&] { validate(m); });

    auto& p = out.plant;
    real("plant", "volts_to_pascals", p.volts_to_pascals);
    real("plant", "pressure_tau", p.pressure_tau);
    real("plant", "settle_band", p.settle_band);
    real("plant", "loadcell_sigma", p.loadcell_sigma);
    real("plant", "mu_sigma", p.mu_sigma);
    real("plant", "timestep", p.timestep);
    seed("plant", "seed", p.seed);
    real("plant", "close_rate", p.close_rate);
    real("plant", "hold_time", p.hold_time);
    real("plant", "lift_time", p.lift_time);
    real("plant", "transport_time", p.transport_time);
    real("plant", "transport_factor", p.transport_factor);
    validated("plant", [&] { validate(p); });

    auto& g = out.grasp;
    if (const auto* v = find("grasp", "mass")) g.mass = v->numbers[0];
    real("grasp", "gravity", g.gravity);
    integer("grasp", "contacts", g.contacts);
    integer("grasp", "bulges", g.bulges);
    real("grasp", "safety_factor", g.safety_factor);
    validated("grasp", [&] { validate(g.payload(g.mass.value_or(0.0))); });
    if (g.bulges < 1) throw ValidationError("bulges", line_of("grasp", "bulges"), "must be >= 1");

    if (doc_.sections.contains("sweep")) {
      SweepDefinition sweep;
      sweep.n_grid = list("sweep", "n_grid");
      sweep.p_grid = list("sweep", "p_grid");
      check_grid("n_grid", sweep.n_grid);
      check_grid("p_grid", sweep.p_grid);
      out.sweep = std::move(sweep);
    }
    return out;
  }

 private:
  const ConfigValue* find(const std::string& section, const std::string& key) const {
    auto s = doc_.sections.find(section);
    if (s == doc_.sections.end()) return nullptr;
    auto k = s->second.find(key);
    return k == s->second.end() ? nullptr : &k->second;
  }

  std::optional<std::size_t> line_of(const std::string& section, const std::string& key) const {
    const auto* v = find(section, key);
    return v ? std::optional<std::size_t>(v->line) : std::nullopt;
  }

  static void check_shape(const KeySpec& spec, const ConfigValue& value) {
    const std::string key(spec.key);
    if (spec.kind != Kind::List && value.numbers.size() != 1)
      throw ValidationError(key, value.line, "expects a single value");
    if (!value.unit.empty()) {
      const Unit* unit = find_unit(value.unit);
      if (spec.dim == Dim::None || unit->dim != spec.dim)
        throw ValidationError(key, value.line, "unit '" + value.unit + "' does not apply to this key");
    }
  }

  const ConfigValue* required_or_optional(const std::string& section, const std::string& key) const {
    const auto* v = find(section, key);
    const KeySpec* spec = find_key(section, key);
    if (!v && spec->required) throw ValidationError(key, std::nullopt, "missing required key in [" + section + "]");
    return v;
  }

  void real(const std::string& section, const std::string& key, double& target) const {
    if (const auto* v = required_or_optional(section, key)) target = v->numbers[0];
  }

  void integer(const std::string& section, const std::string& key, int& target) const {
    const auto* v = required_or_optional(section, key);
    if (!v) return;
    const double x = v->numbers[0];
    if (x != std::floor(x) || std::abs(x) > std::numeric_limits<int>::max())
      throw ValidationError(key, v->line, "must be an integer");
    target = static_cast<int>(x);
  }

  void seed(const std::string& section, const std::string& key, std::uint64_t& target) const {
    const auto* v = required_or_optional(section, key);
    if (!v) return;
    const std::string& text = v->raw[0];
    std::uint64_t parsed = 0;
    auto res = std::from_chars(text.data(), text.data() + text.size(), parsed);
    if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
      throw ValidationError(key, v->line, "must be a non-negative 64-bit integer");
    target = parsed;
  }

  std::vector<double> list(const std::string& section, const std::string& key) const {
    const auto* v = required_or_optional(section, key);
    return v ? v->numbers : std::vector<double>{};
  }

  void check_grid(const std::string& key, const std::vector<double>& grid) const {
    const auto line = line_of("sweep", key);
    if (grid.empty()) throw ValidationError(key, line, "must not be empty");
    if (!std::is_sorted(grid.begin(), grid.end())) throw ValidationError(key, line, "must be sorted ascending");
    if (grid.front() < 0.0) throw ValidationError(key, line, "must be >= 0");
  }

  template <class F>
  void validated(const std::string& section, F&& fn) const {
    try {
      fn();
    } catch (const InvalidParameter& e) {
      throw ValidationError(e.field(), line_of(section, e.field()), e.what());
    }
  }

  const ConfigDocument& doc_;
};

void put(std::ostringstream& os, std::string_view key, double value) {
  os << key << " = " << format_number(value) << '\n';
}

}  // namespace

ConfigDocument parse_config(std::string_view text) {
  if (text.starts_with("\xEF\xBB\xBF")) text.remove_prefix(3);
  ConfigDocument doc;
  std::string section;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto nl = text.find('\n', pos);
    std::string_view line = text.substr(pos, nl == std::string_view::npos ? std::string_view::npos : nl - pos);
    pos = nl == std::string_view::npos ? text.size() + 1 : nl + 1;
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']') throw ParseError(line_no, "unterminated section header");
      const auto name = trim(line.substr(1, line.size() - 2));
      if (!valid_identifier(name)) throw ParseError(line_no, "invalid section name");
      if (!known_section(name)) throw UnknownKey(line_no, "[" + std::string(name) + "]");
      section = std::string(name);
      doc.sections[section];
      continue;
    }

    const auto eq = line.find('=');
    if (eq == std::string_view::npos) throw ParseError(line_no, "expected 'key = value'");
    const auto key = trim(line.substr(0, eq));
    const auto rhs = trim(line.substr(eq + 1));
    if (!valid_identifier(key)) throw ParseError(line_no, "invalid key '" + std::string(key) + "'");
    if (section.empty()) throw ParseError(line_no, "key outside of any [section]");
    if (rhs.empty()) throw ParseError(line_no, "missing value for '" + std::string(key) + "'");

    auto& keys = doc.sections[section];
    if (keys.contains(std::string(key))) throw ParseError(line_no, "duplicate key '" + std::string(key) + "'");
    keys.emplace(std::string(key), parse_value(rhs, line_no));
  }
  return doc;
}

LoadedConfig load_config_text(std::string_view text) { return Loader(parse_config(text)).load(); }

LoadedConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot open config file '" + path.string() + "'");
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return load_config_text(buffer.str());
}

std::string serialize_config(const LoadedConfig& c) {
  std::ostringstream os;
  const auto& m = c.membrane;
  os << "[membrane]\n";
  put(os, "sigma0", m.sigma0);
  put(os, "t", m.t);
  put(os, "a", m.a);
  put(os, "E", m.E);
  put(os, "nu", m.nu);
  put(os, "h_max", m.h_max);
  put(os, "g", m.g);
  put(os, "E0", m.E0);
  put(os, "eta", m.eta);
  put(os, "tau_s", m.tau_s);
  put(os, "mu_rim", m.mu_rim);

  const auto& p = c.plant;
  os << "\n[plant]\n";
  put(os, "volts_to_pascals", p.volts_to_pascals);
  put(os, "pressure_tau", p.pressure_tau);
  put(os, "settle_band", p.settle_band);
  put(os, "loadcell_sigma", p.loadcell_sigma);
  put(os, "mu_sigma", p.mu_sigma);
  put(os, "timestep", p.timestep);
  os << "seed = " << p.seed << '\n';
  put(os, "close_rate", p.close_rate);
  put(os, "hold_time", p.hold_time);
  put(os, "lift_time", p.lift_time);
  put(os, "transport_time", p.transport_time);
  put(os, "transport_factor", p.transport_factor);

  const auto& g = c.grasp;
  os << "\n[grasp]\n";
  if (g.mass) put(os, "mass", *g.mass);
  put(os, "gravity", g.gravity);
  os << "contacts = " << g.contacts << '\n';
  os << "bulges = " << g.bulges << '\n';
  put(os, "safety_factor", g.safety_factor);

  if (c.sweep) {
    auto list = [&](std::string_view key, const std::vector<double>& values) {
      os << key << " =";
      for (std::size_t i = 0; i < values.size(); ++i) os << (i ? ", " : " ") << format_number(values[i]);
      os << '\n';
    };
    os << "\n[sweep]\n";
    list("n_grid", c.sweep->n_grid);
    list("p_grid", c.sweep->p_grid);
  }
  return os.str();
}

}  // namespace pocketgrip
