#include "pocketgrip/membrane.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "pocketgrip/errors.hpp"
#include "pocketgrip/roots.hpp"

namespace pocketgrip {

namespace {

void require(bool ok, const char* field, const char* rule) {
  if (!ok) throw InvalidParameter(field, rule);
}

// Cubic-law coefficients: p = linear * h + cubic * h^3.
double linear_coefficient(const MembraneSpec& s) { return 2.0 * s.sigma0 * s.t / (s.a * s.a); }

double cubic_coefficient(const MembraneSpec& s) {
  const double a2 = s.a * s.a;
  return (4.0 / 3.0) * s.E * s.t / ((1.0 - s.nu * s.nu) * a2 * a2);
}

void require_pressure(double p) {
  if (!(p >= 0.0) || !std::isfinite(p)) throw std::domain_error("pressure must be finite and >= 0");
}

}  // namespace

void validate(const MembraneSpec& s) {
  auto positive = [](double v) { return std::isfinite(v) && v > 0.0; };
  auto non_negative = [](double v) { return std::isfinite(v) && v >= 0.0; };
  require(positive(s.sigma0), "sigma0", "must be > 0");
  require(positive(s.t), "t", "must be > 0");
  require(positive(s.a), "a", "must be > 0");
  require(positive(s.E), "E", "must be > 0");
  require(std::isfinite(s.nu) && s.nu > 0.0 && s.nu < 0.5, "nu", "must lie in (0, 0.5)");
  require(positive(s.h_max), "h_max", "must be > 0");
  require(non_negative(s.g), "g", "must be >= 0");
  require(positive(s.E0), "E0", "must be > 0");
  require(non_negative(s.eta), "eta", "must be >= 0");
  require(positive(s.tau_s), "tau_s", "must be > 0");
  require(non_negative(s.mu_rim), "mu_rim", "must be >= 0");
  require(s.h_max > s.g, "h_max", "must exceed the rim gap g");
}

MembraneSpec reference_spec() {
  MembraneSpec s;
  s.sigma0 = 1.0e6;
  s.t = 1.0e-3;
  s.a = 4.0e-3;
  s.E = 1.0e6;
  s.nu = 0.48;
  s.h_max = 2.5e-3;
  s.g = 0.2e-3;
  s.E0 = 0.1e6;
  s.eta = 1.0e-6;
  s.tau_s = 20.0e3;
  s.mu_rim = 0.2;
  return s;
}

std::string_view to_string(BulgeMode mode) { return mode == BulgeMode::Linear ? "linear" : "exact"; }

std::optional<BulgeMode> parse_bulge_mode(std::string_view text) {
  if (text == "exact") return BulgeMode::Exact;
  if (text == "linear") return BulgeMode::Linear;
  return std::nullopt;
}

double bulge_pressure(double h, const MembraneSpec& spec) {
  if (!(h >= 0.0 && h <= spec.h_max)) throw std::domain_error("bulge height outside [0, h_max]");
  return linear_coefficient(spec) * h + cubic_coefficient(spec) * h * h * h;
}

double bulge_stiffness(double h, const MembraneSpec& spec) {
  return linear_coefficient(spec) + 3.0 * cubic_coefficient(spec) * h * h;
}

double height_compliance(const MembraneSpec& spec) { return spec.a * spec.a / (2.0 * spec.sigma0 * spec.t); }

double saturation_pressure(const MembraneSpec& spec) { return bulge_pressure(spec.h_max, spec); }

double bulge_height_linear(double p, const MembraneSpec& spec) {
  require_pressure(p);
  return std::min(height_compliance(spec) * p, spec.h_max);
}

double bulge_height_exact(double p, const MembraneSpec& spec) {
  require_pressure(p);
  if (p == 0.0) return 0.0;
  if (p >= saturation_pressure(spec)) return spec.h_max;

  // The cubic term only adds pressure, so the linear estimate bounds h from above.
  const double upper = std::min(height_compliance(spec) * p, spec.h_max);
  const double c1 = linear_coefficient(spec);
  const double c3 = cubic_coefficient(spec);
  return roots::solve_increasing([&](double h) { return c1 * h + c3 * h * h * h - p; },
                                 [&](double h) { return c1 + 3.0 * c3 * h * h; }, 0.0, upper, 1e-13);
}

std::optional<double> cap_radius(double h, double a) {
  if (!(h > 0.0)) return std::nullopt;
  return (a * a + h * h) / (2.0 * h);
}

BulgeState resolve_bulge(double p, const MembraneSpec& spec, BulgeMode mode) {
  BulgeState state;
  state.p = p;
  state.h = mode == BulgeMode::Linear ? bulge_height_linear(p, spec) : bulge_height_exact(p, spec);
  state.radius = cap_radius(state.h, spec.a);
  state.s = state.h - spec.g;
  return state;
}

}  // namespace pocketgrip
