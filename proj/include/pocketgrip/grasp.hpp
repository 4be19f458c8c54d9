#pragma once

#include <optional>
#include <span>
#include <vector>

#include "pocketgrip/contact.hpp"
#include "pocketgrip/membrane.hpp"

namespace pocketgrip {

/// What has to be lifted and how many finger pads share it.
struct Payload {
  double mass = 0.0;           ///< [kg]
  double gravity = 9.81;       ///< [m/s^2]
  int contacts = 2;            ///< finger-object contact patches
  double safety_factor = 1.0;  ///< multiplies the weight

  double demand() const noexcept { return safety_factor * mass * gravity; }

  friend bool operator==(const Payload&, const Payload&) = default;
};

/// Throws InvalidParameter on mass < 0, gravity <= 0, contacts < 1 or safety_factor <= 0.
void validate(const Payload& payload);

struct GraspQuery {
  Payload payload;
  double n = 0.0;  ///< per-contact normal force [N]
  double p = 0.0;  ///< pocket pressure [Pa]
  ContactOptions contact;
};

struct GraspVerdict {
  bool feasible = false;
  double capacity = 0.0;  ///< contacts * F_f [N]
  double demand = 0.0;    ///< weight times safety factor [N]
  double margin = 0.0;    ///< capacity - demand [N]
  ContactRegime regime = ContactRegime::RimOnly;
};

/// Total friction capacity of all contacts at (n, p).
double grasp_capacity(const Payload& payload, double n, double p, const MembraneSpec& spec,
                      const ContactOptions& options = {});

/// Quasi-static lift check; margin == 0 counts as feasible.
GraspVerdict check_grasp(const GraspQuery& query, const MembraneSpec& spec);

/// Smallest per-contact normal force that lifts the payload at pressure p,
/// or nullopt when capacity stays below demand for every force.
std::optional<double> min_normal_force(const Payload& payload, double p, const MembraneSpec& spec,
                                       const ContactOptions& options = {});

/// Smallest pressure in [0, saturation_pressure(spec)] that lifts the payload
/// at normal force n, to within 1 Pa, or nullopt.
std::optional<double> min_pressure(const Payload& payload, double n, const MembraneSpec& spec,
                                   const ContactOptions& options = {});

struct SweepCell {
  double n = 0.0;
  double p = 0.0;
  GraspVerdict verdict;
};

/// One verdict per (n, p), n-major. Both grids must be non-empty and sorted.
std::vector<SweepCell> sweep_grid(const Payload& payload, std::span<const double> n_values,
                                  std::span<const double> p_values, const MembraneSpec& spec,
                                  const ContactOptions& options = {});

}  // namespace pocketgrip
