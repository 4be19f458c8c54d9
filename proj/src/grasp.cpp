#include "pocketgrip/grasp.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "pocketgrip/errors.hpp"
#include "pocketgrip/roots.hpp"

namespace pocketgrip {

namespace {

constexpr int kPressureScanPoints = 256;
constexpr double kPressureTolerance = 1.0;  // Pa
constexpr double kForceTolerance = 1e-6;    // N
constexpr double kForceCeiling = 1e12;      // N; beyond this the payload is declared infeasible

// Steps x upward one ulp at a time until pred holds; absorbs rounding in closed forms.
template <class Pred>
std::optional<double> nudge_until(Pred&& pred, double x, int max_steps = 64) {
  for (int i = 0; i < max_steps; ++i) {
    if (pred(x)) return x;
    x = std::nextafter(x, INFINITY);
  }
  return std::nullopt;
}

void require_sorted(std::span<const double> values, const char* name) {
  if (values.empty()) throw std::invalid_argument(std::string(name) + " grid is empty");
  if (!std::is_sorted(values.begin(), values.end()))
    throw std::invalid_argument(std::string(name) + " grid is not sorted");
}

}  // namespace

void validate(const Payload& payload) {
  if (!(payload.mass >= 0.0) || !std::isfinite(payload.mass)) throw InvalidParameter("mass", "must be >= 0");
  if (!(payload.gravity > 0.0) || !std::isfinite(payload.gravity)) throw InvalidParameter("gravity", "must be > 0");
  if (payload.contacts < 1) throw InvalidParameter("contacts", "must be >= 1");
  if (!(payload.safety_factor > 0.0) || !std::isfinite(payload.safety_factor))
    throw InvalidParameter("safety_factor", "must be > 0");
}

double grasp_capacity(const Payload& payload, double n, double p, const MembraneSpec& spec,
                      const ContactOptions& options) {
  return payload.contacts * resolve_contact(n, p, spec, options).friction_force;
}

GraspVerdict check_grasp(const GraspQuery& query, const MembraneSpec& spec) {
  validate(query.payload);
  const ContactSolution contact = resolve_contact(query.n, query.p, spec, query.contact);
  GraspVerdict v;
  v.regime = contact.regime;
  v.capacity = query.payload.contacts * contact.friction_force;
  v.demand = query.payload.demand();
  v.margin = v.capacity - v.demand;
  v.feasible = v.capacity >= v.demand;
  return v;
}

std::optional<double> min_normal_force(const Payload& payload, double p, const MembraneSpec& spec,
                                       const ContactOptions& options) {
  validate(payload);
  const double demand = payload.demand();
  if (demand <= 0.0) return 0.0;

  auto feasible = [&](double n) { return grasp_capacity(payload, n, p, spec, options) >= demand; };

  const BulgeState bulge = resolve_bulge(p, spec, options.mode);
  if (bulge.s > 0.0 && bulge.has_cap()) {
    // Full-membrane closed form: capacity = contacts * k^(1/3) * tau_s * pi * (3R / 4E*)^(2/3) * n^(2/3).
    const double e_star = effective_modulus(p, spec);
    const double shape = std::cbrt(std::pow(3.0 * *bulge.radius / (4.0 * e_star), 2.0));
    const double per_unit = payload.contacts * std::cbrt(static_cast<double>(options.bulges)) * spec.tau_s *
                            std::numbers::pi * shape;
    const double candidate = std::pow(demand / per_unit, 1.5);
    if (resolve_contact(candidate, p, spec, options).regime == ContactRegime::FullMembrane) {
      if (auto n = nudge_until(feasible, candidate)) return n;
    }
  } else {
    if (spec.mu_rim <= 0.0) return std::nullopt;
    if (auto n = nudge_until(feasible, demand / (payload.contacts * spec.mu_rim))) return n;
  }

  // Capacity is non-decreasing in n: double until feasible, then bisect.
  double lo = 0.0;
  double hi = 1.0;
  while (!feasible(hi)) {
    lo = hi;
    hi *= 2.0;
    if (hi > kForceCeiling) return std::nullopt;
  }
  return roots::bisect_first_true(feasible, lo, hi, std::min(kForceTolerance, 1e-9 * hi));
}

std::optional<double> min_pressure(const Payload& payload, double n, const MembraneSpec& spec,
                                   const ContactOptions& options) {
  validate(payload);
  const double demand = payload.demand();
  auto feasible = [&](double p) { return grasp_capacity(payload, n, p, spec, options) >= demand; };
  if (feasible(0.0)) return 0.0;

  const double p_cap = saturation_pressure(spec);
  double previous = 0.0;
  for (int i = 1; i < kPressureScanPoints; ++i) {
    const double p = p_cap * i / (kPressureScanPoints - 1);
    if (feasible(p)) return roots::bisect_first_true(feasible, previous, p, kPressureTolerance);
    previous = p;
  }
  return std::nullopt;
}

std::vector<SweepCell> sweep_grid(const Payload& payload, std::span<const double> n_values,
                                  std::span<const double> p_values, const MembraneSpec& spec,
                                  const ContactOptions& options) {
  require_sorted(n_values, "normal force");
  require_sorted(p_values, "pressure");
  std::vector<SweepCell> cells;
  cells.reserve(n_values.size() * p_values.size());
  for (double n : n_values) {
    for (double p : p_values) {
      cells.push_back({n, p, check_grasp(GraspQuery{payload, n, p, options}, spec)});
    }
  }
  return cells;
}

}  // namespace pocketgrip
