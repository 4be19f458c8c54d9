#pragma once

// Independent re-implementation of the finger model, written directly from
// the governing formulas with no shared code. The bulge cubic is inverted in
// closed form instead of iteratively.

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace oracle {

struct Spec {
  double sigma0, t, a, E, nu, h_max, g, E0, eta, tau_s, mu_rim;
};

struct Point {
  std::string regime;
  double h = 0, R = 0, s = 0, e_star = 0, n_mem = 0, n_rim = 0, area = 0, friction = 0, mu = 0;
};

inline double linear_coeff(const Spec& s) { return 2.0 * s.sigma0 * s.t / (s.a * s.a); }
inline double cubic_coeff(const Spec& s) {
  return 4.0 * s.E * s.t / (3.0 * (1.0 - s.nu * s.nu) * s.a * s.a * s.a * s.a);
}

inline double pressure(double h, const Spec& s) { return linear_coeff(s) * h + cubic_coeff(s) * h * h * h; }

// Real root of h^3 + P h - q = 0 with P > 0 (trigonometric/hyperbolic form).
inline double height(double p, const Spec& s) {
  if (p >= pressure(s.h_max, s)) return s.h_max;
  const double P = linear_coeff(s) / cubic_coeff(s);
  const double q = p / cubic_coeff(s);
  const double arg = 1.5 * q / P * std::sqrt(3.0 / P);
  return 2.0 * std::sqrt(P / 3.0) * std::sinh(std::asinh(arg) / 3.0);
}

inline Point evaluate(double n, double p, const Spec& s, int bulges = 3) {
  Point out;
  out.h = height(p, s);
  out.s = out.h - s.g;
  out.e_star = s.E0 * (1.0 + s.eta * p);
  if (out.s <= 0.0 || out.h <= 0.0) {
    out.regime = "rim_only";
    out.n_rim = n;
    out.friction = s.mu_rim * n;
    out.mu = n > 0 ? out.friction / n : 0.0;
    return out;
  }
  out.R = (s.a * s.a + out.h * out.h) / (2.0 * out.h);
  const double each = n / bulges;
  const double delta_full = std::pow(3.0 * each / (4.0 * out.e_star * std::sqrt(out.R)), 2.0 / 3.0);
  double mem_each = each;
  if (out.s >= delta_full) {
    out.regime = "full_membrane";
  } else {
    out.regime = "mixed";
    mem_each = std::min(4.0 / 3.0 * out.e_star * std::sqrt(out.R) * std::pow(out.s, 1.5), each);
  }
  out.n_mem = bulges * mem_each;
  out.n_rim = n - out.n_mem;
  out.area = bulges * std::numbers::pi * std::pow(3.0 * mem_each * out.R / (4.0 * out.e_star), 2.0 / 3.0);
  out.friction = s.tau_s * out.area + s.mu_rim * out.n_rim;
  out.mu = n > 0 ? out.friction / n : 0.0;
  return out;
}

}  // namespace oracle
