#include "pocketgrip/harness.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <random>
#include <stdexcept>

#include "pocketgrip/errors.hpp"
#include "pocketgrip/table.hpp"

namespace pocketgrip {

void validate(const PlantConfig& cfg) {
  auto finite = [](double v) { return std::isfinite(v); };
  if (!(cfg.volts_to_pascals > 0.0) || !finite(cfg.volts_to_pascals))
    throw InvalidParameter("volts_to_pascals", "must be > 0");
  if (!(cfg.pressure_tau >= 0.0) || !finite(cfg.pressure_tau)) throw InvalidParameter("pressure_tau", "must be >= 0");
  if (!(cfg.settle_band > 0.0 && cfg.settle_band < 1.0)) throw InvalidParameter("settle_band", "must lie in (0, 1)");
  if (!(cfg.loadcell_sigma >= 0.0) || !finite(cfg.loadcell_sigma))
    throw InvalidParameter("loadcell_sigma", "must be >= 0");
  if (!(cfg.mu_sigma >= 0.0) || !finite(cfg.mu_sigma)) throw InvalidParameter("mu_sigma", "must be >= 0");
  if (!(cfg.timestep > 0.0) || !finite(cfg.timestep)) throw InvalidParameter("timestep", "must be > 0");
  if (!(cfg.close_rate > 0.0) || !finite(cfg.close_rate)) throw InvalidParameter("close_rate", "must be > 0");
  if (!(cfg.hold_time >= 0.0) || !finite(cfg.hold_time)) throw InvalidParameter("hold_time", "must be >= 0");
  if (!(cfg.lift_time >= 0.0) || !finite(cfg.lift_time)) throw InvalidParameter("lift_time", "must be >= 0");
  if (!(cfg.transport_time >= 0.0) || !finite(cfg.transport_time))
    throw InvalidParameter("transport_time", "must be >= 0");
  if (!(cfg.transport_factor >= 1.0) || !finite(cfg.transport_factor))
    throw InvalidParameter("transport_factor", "must be >= 1");
}

double voltage_to_pressure(double volts, const PlantConfig& cfg) {
  if (!(volts >= 0.0 && volts <= kMaxRegulatorVolts)) throw std::domain_error("regulator voltage outside [0, 5] V");
  return cfg.volts_to_pascals * volts;
}

double pressure_to_voltage(double pascals, const PlantConfig& cfg) {
  return std::clamp(pascals / cfg.volts_to_pascals, 0.0, kMaxRegulatorVolts);
}

std::string_view to_string(ProtocolState state) {
  switch (state) {
    case ProtocolState::Idle: return "idle";
    case ProtocolState::Pressurize: return "pressurize";
    case ProtocolState::Close: return "close";
    case ProtocolState::Hold: return "hold";
    case ProtocolState::Lift: return "lift";
    case ProtocolState::Transport: return "transport";
    case ProtocolState::Release: return "release";
    case ProtocolState::Dropped: return "dropped";
  }
  return "unknown";
}

std::string_view to_string(GraspOutcome outcome) {
  switch (outcome) {
    case GraspOutcome::Success: return "success";
    case GraspOutcome::Slip: return "slip";
    case GraspOutcome::Failure: return "failure";
  }
  return "unknown";
}

std::optional<GraspOutcome> parse_outcome(std::string_view text) {
  for (auto o : {GraspOutcome::Success, GraspOutcome::Slip, GraspOutcome::Failure})
    if (to_string(o) == text) return o;
  return std::nullopt;
}

bool is_allowed_transition(ProtocolState from, ProtocolState to) {
  using S = ProtocolState;
  if (from == to) return from != S::Release && from != S::Dropped && from != S::Idle;
  switch (from) {
    case S::Idle: return to == S::Pressurize;
    case S::Pressurize: return to == S::Close;
    case S::Close: return to == S::Hold;
    case S::Hold: return to == S::Lift;
    case S::Lift: return to == S::Transport || to == S::Dropped;
    case S::Transport: return to == S::Release || to == S::Dropped;
    case S::Release:
    case S::Dropped: return false;
  }
  return false;
}

std::uint64_t trial_seed(std::uint64_t base_seed, std::uint64_t index) {
  // splitmix64 finalizer over a Weyl sequence.
  std::uint64_t z = base_seed + (index + 1) * 0x9E3779B97F4A7C15ULL;
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

namespace {

class PlantSimulation {
 public:
  PlantSimulation(const GraspQuery& query, const MembraneSpec& spec, const PlantConfig& cfg)
      : query_(query), spec_(spec), cfg_(cfg), rng_(cfg.seed) {
    target_pressure_ = std::min(query.p, voltage_to_pressure(kMaxRegulatorVolts, cfg));
  }

  GraspTranscript run() {
    record(ProtocolState::Idle, 0.0);
    pressurize();
    close();
    hold();
    if (!carry(ProtocolState::Lift, cfg_.lift_time, 1.0)) return finish(GraspOutcome::Failure);
    if (!carry(ProtocolState::Transport, cfg_.transport_time, cfg_.transport_factor)) return finish(GraspOutcome::Slip);
    advance();
    record(ProtocolState::Release, normal_force_);
    return finish(GraspOutcome::Success);
  }

 private:
  static int steps_for(double duration, double dt) {
    return std::max(1, static_cast<int>(std::lround(duration / dt)));
  }

  void advance() {
    ++step_;
    if (pressure_ == target_pressure_) return;
    if (cfg_.pressure_tau == 0.0) {
      pressure_ = target_pressure_;
      return;
    }
    pressure_ += (target_pressure_ - pressure_) * -std::expm1(-cfg_.timestep / cfg_.pressure_tau);
    if (std::abs(target_pressure_ - pressure_) <= cfg_.settle_band * target_pressure_) pressure_ = target_pressure_;
  }

  double measure(double actual) {
    if (cfg_.loadcell_sigma == 0.0) return actual;
    return actual + std::normal_distribution<double>(0.0, cfg_.loadcell_sigma)(rng_);
  }

  double capacity_scale() {
    if (cfg_.mu_sigma == 0.0) return 1.0;
    const double eps = std::normal_distribution<double>(0.0, cfg_.mu_sigma)(rng_);
    return 1.0 + std::max(eps, -0.9);
  }

  void record(ProtocolState state, double actual_force) {
    transcript_.states.push_back({step_ * cfg_.timestep, state, pressure_, measure(actual_force)});
  }

  void pressurize() {
    const int max_steps = steps_for(50.0 * cfg_.pressure_tau, cfg_.timestep) + 1;
    for (int i = 0; i < max_steps; ++i) {
      advance();
      record(ProtocolState::Pressurize, 0.0);
      if (pressure_ == target_pressure_) break;
    }
  }

  void close() {
    const double target = query_.n;
    const double increment = cfg_.close_rate * cfg_.timestep;
    double commanded = 0.0;
    for (long i = 0; i < 10'000'000; ++i) {
      advance();
      if (target > 0.0) {
        double next = commanded + increment;
        if (commanded < target && next > target) next = target;
        commanded = next;
      }
      const double reading = measure(commanded);
      transcript_.states.push_back({step_ * cfg_.timestep, ProtocolState::Close, pressure_, reading});
      if (reading >= target) break;
    }
    normal_force_ = commanded;
  }

  void hold() {
    for (int i = 0, n = steps_for(cfg_.hold_time, cfg_.timestep); i < n; ++i) {
      advance();
      record(ProtocolState::Hold, normal_force_);
    }
  }

  // Returns false when the object drops during this phase.
  bool carry(ProtocolState phase, double duration, double demand_factor) {
    const double demand = query_.payload.demand() * demand_factor;
    for (int i = 0, n = steps_for(duration, cfg_.timestep); i < n; ++i) {
      advance();
      record(phase, normal_force_);
      if (capacity() * capacity_scale() < demand) {
        record(ProtocolState::Dropped, 0.0);
        return false;
      }
    }
    return true;
  }

  double capacity() {
    if (!cached_capacity_ || cached_pressure_ != pressure_) {
      cached_pressure_ = pressure_;
      cached_capacity_ = grasp_capacity(query_.payload, normal_force_, pressure_, spec_, query_.contact);
    }
    return *cached_capacity_;
  }

  GraspTranscript finish(GraspOutcome outcome) {
    transcript_.outcome = outcome;
    return std::move(transcript_);
  }

  const GraspQuery& query_;
  const MembraneSpec& spec_;
  const PlantConfig& cfg_;
  std::mt19937_64 rng_;
  GraspTranscript transcript_;
  long step_ = 0;
  double target_pressure_ = 0.0;
  double pressure_ = 0.0;
  double normal_force_ = 0.0;
  double cached_pressure_ = 0.0;
  std::optional<double> cached_capacity_;
};

}  // namespace

GraspTranscript run_grasp_protocol(const GraspQuery& query, const MembraneSpec& spec, const PlantConfig& cfg) {
  validate(cfg);
  validate(query.payload);
  return PlantSimulation(query, spec, cfg).run();
}

double monte_carlo_success(const GraspQuery& query, const MembraneSpec& spec, const PlantConfig& cfg, int trials) {
  if (trials < 1) throw std::invalid_argument("trials must be >= 1");
  PlantConfig trial_cfg = cfg;
  int successes = 0;
  for (int i = 0; i < trials; ++i) {
    trial_cfg.seed = trial_seed(cfg.seed, static_cast<std::uint64_t>(i));
    if (run_grasp_protocol(query, spec, trial_cfg).outcome == GraspOutcome::Success) ++successes;
  }
  return static_cast<double>(successes) / trials;
}

void write_transcript(std::ostream& os, const GraspTranscript& transcript) {
  for (const auto& e : transcript.states) {
    os << format_number(e.time) << ' ' << to_string(e.state) << ' ' << format_number(e.pressure) << ' '
       << format_number(e.measured_force) << '\n';
  }
  os << "outcome: " << to_string(transcript.outcome) << '\n';
}

}  // namespace pocketgrip
