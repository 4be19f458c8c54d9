#pragma once

#include <optional>
#include <string_view>

namespace pocketgrip {

/// Physical constants of one pressurized pocket. All values SI.
struct MembraneSpec {
  double sigma0 = 0.0;  ///< residual equibiaxial stress [Pa]
  double t = 0.0;       ///< membrane thickness [m]
  double a = 0.0;       ///< effective half-span, half the groove width [m]
  double E = 0.0;       ///< membrane Young's modulus [Pa]
  double nu = 0.0;      ///< Poisson's ratio
  double h_max = 0.0;   ///< limiting bulge height [m]
  double g = 0.0;       ///< rim recess gap [m]
  double E0 = 0.0;      ///< contact modulus at zero pressure [Pa]
  double eta = 0.0;     ///< stiffening per unit pressure [1/Pa]
  double tau_s = 0.0;   ///< silicone-object interfacial shear stress [Pa]
  double mu_rim = 0.2;  ///< rigid rim on object friction coefficient

  friend bool operator==(const MembraneSpec&, const MembraneSpec&) = default;
};

/// Throws InvalidParameter naming the first field that breaks an invariant,
/// including h_max <= g (the bulge could never clear the rim).
void validate(const MembraneSpec& spec);

/// Order-of-magnitude defaults for an 8 mm groove in soft silicone. These are
/// not measured constants; configure them explicitly for quantitative work.
MembraneSpec reference_spec();

enum class BulgeMode { Exact, Linear };

std::string_view to_string(BulgeMode mode);
std::optional<BulgeMode> parse_bulge_mode(std::string_view text);

/// Inflated pocket geometry at one pressure.
struct BulgeState {
  double p = 0.0;                ///< pressure [Pa]
  double h = 0.0;                ///< apex deflection [m]
  std::optional<double> radius;  ///< cap radius [m]; empty when flat (h == 0)
  double s = 0.0;                ///< protrusion beyond the rim, h - g [m]

  bool has_cap() const noexcept { return radius.has_value(); }
};

/// Pressure that holds the membrane at apex deflection h (cubic bulge law).
/// Throws std::domain_error outside [0, h_max].
double bulge_pressure(double h, const MembraneSpec& spec);

/// d(bulge_pressure)/dh.
double bulge_stiffness(double h, const MembraneSpec& spec);

/// Small-deflection compliance k_h = a^2 / (2 sigma0 t) [m/Pa].
double height_compliance(const MembraneSpec& spec);

/// Pressure at which the bulge reaches h_max.
double saturation_pressure(const MembraneSpec& spec);

/// min(k_h p, h_max). Throws std::domain_error for p < 0.
double bulge_height_linear(double p, const MembraneSpec& spec);

/// Inverts the cubic bulge law to relative tolerance 1e-12, clamping at h_max.
/// Throws std::domain_error for p < 0.
double bulge_height_exact(double p, const MembraneSpec& spec);

/// (a^2 + h^2) / (2h); empty for h <= 0.
std::optional<double> cap_radius(double h, double a);

BulgeState resolve_bulge(double p, const MembraneSpec& spec, BulgeMode mode = BulgeMode::Exact);

}  // namespace pocketgrip
