#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "pocketgrip/grasp.hpp"
#include "pocketgrip/harness.hpp"
#include "pocketgrip/membrane.hpp"

namespace pocketgrip {

// Configuration files are line oriented:
//
//   # comment
//   [membrane]
//   sigma0 = 1 MPa
//   p_grid = 0, 25, 50, 75, 100, 125 kPa
//
// A unit suffix applies to every value of the list and is converted to SI.

class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed line.
class ParseError : public ConfigError {
 public:
  ParseError(std::size_t line, const std::string& what)
      : ConfigError("line " + std::to_string(line) + ": " + what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// A value breaks an invariant of its target type.
class ValidationError : public ConfigError {
 public:
  ValidationError(std::string field, std::optional<std::size_t> line, const std::string& what)
      : ConfigError((line ? "line " + std::to_string(*line) + ": " : std::string{}) + field + ": " + what),
        field_(std::move(field)),
        line_(line) {}
  const std::string& field() const noexcept { return field_; }
  std::optional<std::size_t> line() const noexcept { return line_; }

 private:
  std::string field_;
  std::optional<std::size_t> line_;
};

/// Key or section the loader does not know.
class UnknownKey : public ConfigError {
 public:
  UnknownKey(std::size_t line, std::string key)
      : ConfigError("line " + std::to_string(line) + ": unknown key '" + key + "'"), key_(std::move(key)), line_(line) {}
  const std::string& key() const noexcept { return key_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string key_;
  std::size_t line_;
};

struct ConfigValue {
  std::vector<std::string> raw;  ///< value tokens without unit
  std::vector<double> numbers;   ///< converted to SI
  std::string unit;              ///< empty when none was given
  std::size_t line = 0;
};

/// Section name -> key -> value, after syntax and unit checks only.
struct ConfigDocument {
  std::map<std::string, std::map<std::string, ConfigValue>> sections;
};

/// Throws ParseError or UnknownKey for unknown sections and units.
ConfigDocument parse_config(std::string_view text);

struct SweepDefinition {
  std::vector<double> n_grid;  ///< [N]
  std::vector<double> p_grid;  ///< [Pa]

  friend bool operator==(const SweepDefinition&, const SweepDefinition&) = default;
};

struct GraspSettings {
  std::optional<double> mass;  ///< [kg]
  double gravity = 9.81;
  int contacts = 2;
  int bulges = 3;
  double safety_factor = 1.0;

  Payload payload(double mass_kg) const { return {mass_kg, gravity, contacts, safety_factor}; }
  ContactOptions contact(BulgeMode mode = BulgeMode::Exact) const { return {bulges, mode}; }

  friend bool operator==(const GraspSettings&, const GraspSettings&) = default;
};

struct LoadedConfig {
  MembraneSpec membrane;
  PlantConfig plant;
  std::optional<SweepDefinition> sweep;
  GraspSettings grasp;

  friend bool operator==(const LoadedConfig&, const LoadedConfig&) = default;
};

/// Parses and validates; every domain invariant is checked here.
LoadedConfig load_config_text(std::string_view text);
LoadedConfig load_config(const std::filesystem::path& path);

/// Canonical text form; load_config_text(serialize_config(c)) == c.
std::string serialize_config(const LoadedConfig& config);

}  // namespace pocketgrip
