#include "pocketgrip/contact.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace pocketgrip {

namespace {

void require_hertz_inputs(double n, double e_star, double r) {
  if (!(n >= 0.0) || !std::isfinite(n)) throw std::domain_error("normal load must be finite and >= 0");
  if (!(e_star > 0.0)) throw std::domain_error("effective modulus must be > 0");
  if (!(r > 0.0)) throw std::domain_error("radius of curvature must be > 0");
}

}  // namespace

std::string_view to_string(ContactRegime regime) {
  switch (regime) {
    case ContactRegime::RimOnly: return "rim_only";
    case ContactRegime::Mixed: return "mixed";
    case ContactRegime::FullMembrane: return "full_membrane";
  }
  return "unknown";
}

std::optional<ContactRegime> parse_regime(std::string_view text) {
  for (auto r : {ContactRegime::RimOnly, ContactRegime::Mixed, ContactRegime::FullMembrane})
    if (to_string(r) == text) return r;
  return std::nullopt;
}

double effective_modulus(double p, const MembraneSpec& spec) {
  if (!(p >= 0.0)) throw std::domain_error("pressure must be >= 0");
  return spec.E0 * (1.0 + spec.eta * p);
}

double hertz_indentation(double n, double e_star, double r) {
  require_hertz_inputs(n, e_star, r);
  const double x = 3.0 * n / (4.0 * e_star * std::sqrt(r));
  return std::cbrt(x * x);
}

double hertz_area(double n, double e_star, double r) {
  require_hertz_inputs(n, e_star, r);
  const double contact_radius = std::cbrt(3.0 * n * r / (4.0 * e_star));
  return std::numbers::pi * contact_radius * contact_radius;
}

double hertz_load(double delta, double e_star, double r) {
  require_hertz_inputs(0.0, e_star, r);
  if (!(delta >= 0.0)) throw std::domain_error("indentation must be >= 0");
  return (4.0 / 3.0) * e_star * std::sqrt(r) * delta * std::sqrt(delta);
}

ContactSolution resolve_contact(double n, double p, const MembraneSpec& spec, const ContactOptions& options) {
  if (!(n >= 0.0) || !std::isfinite(n)) throw std::domain_error("normal load must be finite and >= 0");
  if (options.bulges < 1) throw std::invalid_argument("bulges must be >= 1");

  ContactSolution out;
  out.bulge = resolve_bulge(p, spec, options.mode);
  out.e_star = effective_modulus(p, spec);

  if (!(out.bulge.s > 0.0) || !out.bulge.has_cap()) {
    out.regime = ContactRegime::RimOnly;
    out.n_rim = n;
    out.friction_force = spec.mu_rim * n;
    out.mu_eff = n > 0.0 ? spec.mu_rim : 0.0;
    return out;
  }

  const double bulges = options.bulges;
  const double radius = *out.bulge.radius;
  const double per_bulge = n / bulges;
  const double full_depth = hertz_indentation(per_bulge, out.e_star, radius);

  double membrane_per_bulge = per_bulge;
  if (out.bulge.s >= full_depth) {
    out.regime = ContactRegime::FullMembrane;
  } else {
    // The rim stops the bulge once it is pressed flush: indentation equals s.
    out.regime = ContactRegime::Mixed;
    membrane_per_bulge = std::min(hertz_load(out.bulge.s, out.e_star, radius), per_bulge);
  }

  out.delta = hertz_indentation(membrane_per_bulge, out.e_star, radius);
  out.area = bulges * hertz_area(membrane_per_bulge, out.e_star, radius);

  // Written so that n_membrane + n_rim reproduces n exactly in floating point.
  if (out.regime == ContactRegime::FullMembrane) {
    out.n_membrane = n;
    out.n_rim = 0.0;
  } else {
    out.n_rim = std::max(0.0, n - bulges * membrane_per_bulge);
    out.n_membrane = n - out.n_rim;
  }

  out.friction_force = spec.tau_s * out.area + spec.mu_rim * out.n_rim;
  out.mu_eff = n > 0.0 ? out.friction_force / n : 0.0;
  return out;
}

}  // namespace pocketgrip
