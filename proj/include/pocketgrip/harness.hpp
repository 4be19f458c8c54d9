#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string_view>
#include <vector>

#include "pocketgrip/grasp.hpp"
#include "pocketgrip/membrane.hpp"

namespace pocketgrip {

/// Simulated gripper hardware and protocol timing. The regulator and load-cell
/// noise model is synthetic; the timing values are defaults, not measurements.
struct PlantConfig {
  double volts_to_pascals = 1.0e5;  ///< regulator slope, 0-5 V -> 0-500 kPa
  double pressure_tau = 0.2;        ///< first-order regulator lag [s]
  double settle_band = 0.01;        ///< relative error at which the regulator locks on setpoint
  double loadcell_sigma = 0.02;     ///< additive load-cell noise std [N]
  double mu_sigma = 0.05;           ///< multiplicative capacity noise std
  double timestep = 0.01;           ///< [s]
  std::uint64_t seed = 1;

  double close_rate = 10.0;       ///< commanded force ramp while closing [N/s]
  double hold_time = 0.2;         ///< [s]
  double lift_time = 0.2;         ///< [s]
  double transport_time = 0.5;    ///< [s]
  double transport_factor = 1.0;  ///< demand multiplier while transporting

  friend bool operator==(const PlantConfig&, const PlantConfig&) = default;
};

/// Throws InvalidParameter naming the offending field.
void validate(const PlantConfig& cfg);

inline constexpr double kMaxRegulatorVolts = 5.0;

/// Regulator command voltage to output pressure. Throws std::domain_error outside [0, 5] V.
double voltage_to_pressure(double volts, const PlantConfig& cfg);

/// Inverse map, clamped to the regulator's [0, 5] V input range.
double pressure_to_voltage(double pascals, const PlantConfig& cfg);

enum class ProtocolState { Idle, Pressurize, Close, Hold, Lift, Transport, Release, Dropped };
enum class GraspOutcome { Success, Slip, Failure };

std::string_view to_string(ProtocolState state);
std::string_view to_string(GraspOutcome outcome);
std::optional<GraspOutcome> parse_outcome(std::string_view text);

/// Whether the protocol graph has an edge from -> to (self loops included).
bool is_allowed_transition(ProtocolState from, ProtocolState to);

struct TranscriptEntry {
  double time = 0.0;
  ProtocolState state = ProtocolState::Idle;
  double pressure = 0.0;        ///< regulator output [Pa]
  double measured_force = 0.0;  ///< load-cell reading [N]

  friend bool operator==(const TranscriptEntry&, const TranscriptEntry&) = default;
};

struct GraspTranscript {
  std::vector<TranscriptEntry> states;
  GraspOutcome outcome = GraspOutcome::Failure;
};

/// Force-thresholding grasp against the simulated plant: pressurize, close
/// until the load cell reads the target force, hold, lift, transport.
/// Deterministic in (query, spec, cfg) including cfg.seed.
GraspTranscript run_grasp_protocol(const GraspQuery& query, const MembraneSpec& spec, const PlantConfig& cfg);

/// Seed of trial `index` derived from the base seed by a counter-based mix,
/// so results do not depend on the order trials are run in.
std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index);

/// Fraction of `trials` independent protocol runs that end in Success.
double monte_carlo_success(const GraspQuery& query, const MembraneSpec& spec, const PlantConfig& cfg, int trials);

/// `time state pressure force` per line, then `outcome: <label>`.
void write_transcript(std::ostream& os, const GraspTranscript& transcript);

}  // namespace pocketgrip
