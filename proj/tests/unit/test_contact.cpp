#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "pocketgrip/contact.hpp"
#include "../support/random_specs.hpp"

using namespace pocketgrip;
using testing_support::random_spec;
using testing_support::uniform;

namespace {

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

// Pressure at which a random spec first clears the rim, then a pressure well past it.
double clearing_pressure(const MembraneSpec& s) { return bulge_pressure(s.g, s); }

}  // namespace

TEST_CASE("effective modulus") {
  MembraneSpec s = reference_spec();
  CHECK(effective_modulus(0.0, s) == s.E0);
  s.E0 = 1e6;
  s.eta = 2e-6;
  CHECK(effective_modulus(100e3, s) == doctest::Approx(1.2e6).epsilon(1e-15));
  s.eta = 0.0;
  CHECK(effective_modulus(100e3, s) == 1e6);
}

TEST_CASE("hertz indentation") {
  CHECK(hertz_indentation(0.0, 1e6, 0.02) == 0.0);
  const double d = hertz_indentation(3.0, 1e6, 0.02);
  CHECK(d == doctest::Approx(6.33e-4).epsilon(2e-3));
  CHECK(hertz_load(d, 1e6, 0.02) == doctest::Approx(3.0).epsilon(1e-14));
  CHECK(hertz_indentation(24.0, 1e6, 0.02) / d == doctest::Approx(4.0).epsilon(1e-14));
  CHECK_THROWS_AS(hertz_indentation(1.0, 0.0, 0.02), std::domain_error);
  CHECK_THROWS_AS(hertz_indentation(1.0, 1e6, -1.0), std::domain_error);
  CHECK_THROWS_AS(hertz_indentation(-1.0, 1e6, 0.02), std::domain_error);
}

TEST_CASE("hertz area and identity") {
  CHECK(hertz_area(0.0, 1e6, 0.02) == 0.0);
  CHECK(hertz_area(3.0, 1e6, 0.02) == doctest::Approx(3.98e-5).epsilon(3e-3));
  std::mt19937_64 rng(21);
  for (int i = 0; i < 1000; ++i) {
    const double n = uniform(rng, 1e-3, 20.0), e = uniform(rng, 1e4, 1e7), r = uniform(rng, 1e-3, 0.1);
    CHECK(rel(hertz_area(n, e, r), std::numbers::pi * r * hertz_indentation(n, e, r)) <= 1e-13);
  }
}

TEST_CASE("zero pressure is rim-only Coulomb friction") {
  const ContactSolution c = resolve_contact(3.0, 0.0, reference_spec());
  CHECK(c.regime == ContactRegime::RimOnly);
  CHECK(c.friction_force == doctest::Approx(0.6).epsilon(1e-15));
  CHECK(c.mu_eff == 0.2);
  CHECK(c.n_membrane == 0.0);
  CHECK(c.area == 0.0);
  CHECK(c.n_rim == 3.0);
}

TEST_CASE("zero load gives zero coefficient") {
  for (double p : {0.0, 60e3, 125e3}) {
    const ContactSolution c = resolve_contact(0.0, p, reference_spec());
    CHECK(c.mu_eff == 0.0);
    CHECK(c.friction_force == 0.0);
  }
}

TEST_CASE("argument checks") {
  CHECK_THROWS_AS(resolve_contact(-1.0, 0.0, reference_spec()), std::domain_error);
  CHECK_THROWS_AS(resolve_contact(1.0, -1.0, reference_spec()), std::domain_error);
  CHECK_THROWS_AS(resolve_contact(1.0, 0.0, reference_spec(), {0, BulgeMode::Exact}), std::invalid_argument);
}

TEST_CASE("regime tags") {
  for (auto r : {ContactRegime::RimOnly, ContactRegime::Mixed, ContactRegime::FullMembrane})
    CHECK(parse_regime(to_string(r)) == r);
  CHECK(to_string(ContactRegime::FullMembrane) == "full_membrane");
  CHECK_FALSE(parse_regime("Mixed").has_value());
}

TEST_CASE("mixed and full membrane agree at the boundary") {
  const MembraneSpec s = reference_spec();
  const double p = 100e3;
  const BulgeState b = resolve_bulge(p, s);
  // The per-bulge load whose full indentation equals s exactly.
  const double n = 3.0 * hertz_load(b.s, effective_modulus(p, s), *b.radius);
  const ContactSolution at = resolve_contact(n, p, s);
  const ContactSolution below = resolve_contact(std::nextafter(n, 0.0), p, s);
  const ContactSolution above = resolve_contact(n * (1 + 1e-12), p, s);
  CHECK(rel(at.friction_force, above.friction_force) <= 1e-10);
  CHECK(rel(below.friction_force, at.friction_force) <= 1e-10);
  CHECK(rank(above.regime) == rank(ContactRegime::Mixed));
  CHECK(below.regime == ContactRegime::FullMembrane);
}

TEST_CASE("resolved contacts satisfy the structural invariants") {
  std::mt19937_64 rng(22);
  for (int i = 0; i < 2000; ++i) {
    const MembraneSpec s = random_spec(rng);
    const double n = uniform(rng, 0.0, 10.0);
    const double p = uniform(rng, 0.0, 1.2 * saturation_pressure(s));
    const int bulges = 1 + static_cast<int>(uniform(rng, 0.0, 4.0));
    const ContactSolution c = resolve_contact(n, p, s, {bulges, BulgeMode::Exact});
    CHECK(c.n_membrane + c.n_rim == n);
    CHECK(c.n_membrane >= 0.0);
    CHECK(c.n_rim >= 0.0);
    if (c.regime == ContactRegime::RimOnly) {
      CHECK(c.n_membrane == 0.0);
      CHECK(c.area == 0.0);
    }
    if (c.regime == ContactRegime::FullMembrane) CHECK(c.n_rim == 0.0);
    if (n > 0.0) CHECK(rel(c.mu_eff * n, c.friction_force) <= 1e-15);
    if (c.n_membrane > 0.0) {
      const double a_c2 = c.area / (bulges * std::numbers::pi);
      CHECK(rel(a_c2, *c.bulge.radius * c.delta) <= 1e-12);
    }
  }
}

TEST_CASE("contact matches the straight-line model") {
  std::mt19937_64 rng(23);
  for (int i = 0; i < 2000; ++i) {
    const MembraneSpec s = random_spec(rng);
    const double n = uniform(rng, 0.0, 10.0);
    const double p = uniform(rng, 0.0, 1.2 * saturation_pressure(s));
    const ContactSolution c = resolve_contact(n, p, s);
    const oracle::Point o = oracle::evaluate(n, p, testing_support::to_oracle(s));
    // Regimes can only disagree when the point sits on a boundary to rounding.
    if (std::string(to_string(c.regime)) != o.regime) {
      CHECK(std::abs(c.friction_force - o.friction) <= 1e-8 * (1.0 + o.friction));
      continue;
    }
    CHECK(std::abs(c.friction_force - o.friction) <= 1e-9 * (1.0 + o.friction));
    CHECK(std::abs(c.n_rim - o.n_rim) <= 1e-9 * (1.0 + n));
    CHECK(std::abs(c.area - o.area) <= 1e-9 * (1e-6 + o.area));
  }
}

TEST_CASE("full membrane friction follows the two-thirds power of load") {
  std::mt19937_64 rng(24);
  int checked = 0;
  for (int i = 0; i < 400; ++i) {
    const MembraneSpec s = random_spec(rng);
    const double p = uniform(rng, clearing_pressure(s) * 1.5, saturation_pressure(s));
    const double n = 0.01;
    const ContactSolution a = resolve_contact(n, p, s), b = resolve_contact(3 * n, p, s);
    if (a.regime != ContactRegime::FullMembrane || b.regime != ContactRegime::FullMembrane) continue;
    ++checked;
    CHECK(rel(b.friction_force / a.friction_force, std::cbrt(9.0)) <= 1e-12);
    CHECK(rel(b.mu_eff * std::cbrt(3 * n), a.mu_eff * std::cbrt(n)) <= 1e-12);
  }
  CHECK(checked > 100);
}

TEST_CASE("coefficient is continuous in pressure across the regime boundaries") {
  std::mt19937_64 rng(26);
  int boundaries = 0;
  for (int i = 0; i < 200; ++i) {
    const MembraneSpec s = random_spec(rng);
    const double n = uniform(rng, 0.01, 10.0);
    const double top = saturation_pressure(s);
    auto regime = [&](double p) { return rank(resolve_contact(n, p, s).regime); };
    for (int k = 0; k < 400; ++k) {
      double lo = top * k / 400.0, hi = top * (k + 1) / 400.0;
      if (regime(lo) == regime(hi)) continue;
      // Down to adjacent doubles, so any residual difference is a true jump.
      for (double mid = 0.5 * (lo + hi); mid > lo && mid < hi; mid = 0.5 * (lo + hi))
        (regime(mid) == regime(lo) ? lo : hi) = mid;
      ++boundaries;
      CHECK(std::abs(resolve_contact(n, hi, s).mu_eff - resolve_contact(n, lo, s).mu_eff) < 1e-9);
    }
  }
  CHECK(boundaries > 100);
}

TEST_CASE("regime never moves backward with pressure on random specs") {
  std::mt19937_64 rng(25);
  int violations = 0;
  for (int i = 0; i < 300; ++i) {
    const MembraneSpec s = random_spec(rng);
    const double n = uniform(rng, 0.05, 10.0);
    const double top = saturation_pressure(s);
    int prev = rank(ContactRegime::RimOnly);
    for (int k = 0; k <= 400; ++k) {
      const int r = rank(resolve_contact(n, top * k / 400.0, s).regime);
      if (r < prev) ++violations;
      prev = r;
    }
  }
  CHECK(violations == 0);
}

TEST_CASE("full membrane friction can fall as pressure rises") {
  // R shrinks and E* grows with p.
  const MembraneSpec s = reference_spec();
  const double n = 0.05;
  const ContactSolution lo = resolve_contact(n, 100e3, s), hi = resolve_contact(n, 125e3, s);
  REQUIRE(lo.regime == ContactRegime::FullMembrane);
  REQUIRE(hi.regime == ContactRegime::FullMembrane);
  CHECK(hi.friction_force < lo.friction_force);
}
