#pragma once

#include <optional>
#include <string_view>

#include "pocketgrip/membrane.hpp"

namespace pocketgrip {

/// Which surfaces carry the normal load.
enum class ContactRegime {
  RimOnly,       ///< bulge does not clear the rim
  Mixed,         ///< bulge is pressed back to the rim, rim carries the rest
  FullMembrane,  ///< membrane carries everything
};

std::string_view to_string(ContactRegime regime);
std::optional<ContactRegime> parse_regime(std::string_view text);

/// Order RimOnly < Mixed < FullMembrane.
constexpr int rank(ContactRegime regime) { return static_cast<int>(regime); }

struct ContactOptions {
  int bulges = 3;  ///< pockets sharing the load on one finger
  BulgeMode mode = BulgeMode::Exact;

  friend bool operator==(const ContactOptions&, const ContactOptions&) = default;
};

/// Resolved contact of one finger at (n, p). Bulge-level fields (delta) refer
/// to a single bulge; loads, area and friction are finger totals.
struct ContactSolution {
  ContactRegime regime = ContactRegime::RimOnly;
  BulgeState bulge;
  double e_star = 0.0;          ///< [Pa]
  double delta = 0.0;           ///< membrane indentation of one bulge [m]
  double n_membrane = 0.0;      ///< [N]
  double n_rim = 0.0;           ///< [N]
  double area = 0.0;            ///< total membrane contact area [m^2]
  double friction_force = 0.0;  ///< tangential capacity [N]
  double mu_eff = 0.0;
};

/// E0 (1 + eta p).
double effective_modulus(double p, const MembraneSpec& spec);

/// Hertz sphere-on-flat indentation (3n / (4 E* sqrt(r)))^(2/3).
/// Throws std::domain_error for n < 0 or non-positive e_star, r.
double hertz_indentation(double n, double e_star, double r);

/// Hertz contact area pi (3 n r / (4 E*))^(2/3).
double hertz_area(double n, double e_star, double r);

/// Load that produces indentation delta: (4/3) E* sqrt(r) delta^(3/2).
double hertz_load(double delta, double e_star, double r);

/// Resolves regime, load split and friction capacity. Throws std::domain_error
/// for negative n or p and std::invalid_argument for bulges < 1.
ContactSolution resolve_contact(double n, double p, const MembraneSpec& spec, const ContactOptions& options = {});

}  // namespace pocketgrip
