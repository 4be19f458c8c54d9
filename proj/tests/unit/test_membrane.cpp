#include <doctest.h>

#include <cmath>
#include <random>

#include "pocketgrip/errors.hpp"
#include "pocketgrip/membrane.hpp"
#include "../support/random_specs.hpp"

using namespace pocketgrip;
using testing_support::random_spec;

namespace {

MembraneSpec soft_spec() {
  MembraneSpec s = reference_spec();
  s.sigma0 = 0.5e6;
  return s;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

TEST_CASE("bulge pressure at zero deflection is zero") { CHECK(bulge_pressure(0.0, reference_spec()) == 0.0); }

TEST_CASE("bulge pressure at 0.1 mm on a half-megapascal membrane") {
  const MembraneSpec s = soft_spec();
  const double linear = 2.0 * 0.5e6 * 1e-3 * 1e-4 / 16e-6;
  const double cubic = (4.0 / 3.0) * 1e6 * 1e-3 * 1e-12 / ((1.0 - 0.48 * 0.48) * 256e-12);
  CHECK(linear == doctest::Approx(6250.0).epsilon(1e-14));
  CHECK(cubic == doctest::Approx(6.7675).epsilon(1e-4));
  CHECK(bulge_pressure(1e-4, s) == doctest::Approx(linear + cubic).epsilon(1e-13));
}

TEST_CASE("doubling a small deflection doubles the pressure within 1%") {
  const MembraneSpec s = soft_spec();
  CHECK(bulge_pressure(2e-5, s) / bulge_pressure(1e-5, s) == doctest::Approx(2.0).epsilon(0.01));
}

TEST_CASE("bulge pressure rejects heights outside [0, h_max]") {
  const MembraneSpec s = reference_spec();
  CHECK_THROWS_AS(bulge_pressure(-1e-9, s), std::domain_error);
  CHECK_THROWS_AS(bulge_pressure(s.h_max * 1.0001, s), std::domain_error);
  CHECK_NOTHROW(bulge_pressure(s.h_max, s));
}

TEST_CASE("linear height") {
  const MembraneSpec s = soft_spec();
  CHECK(height_compliance(s) == doctest::Approx(1.6e-8).epsilon(1e-14));
  CHECK(bulge_height_linear(0.0, s) == 0.0);
  CHECK(bulge_height_linear(6250.0, s) == doctest::Approx(1.0e-4).epsilon(1e-14));
  CHECK(bulge_height_linear(1e9, s) == s.h_max);
  CHECK_THROWS_AS(bulge_height_linear(-1.0, s), std::domain_error);
}

TEST_CASE("exact height") {
  const MembraneSpec s = reference_spec();
  CHECK(bulge_height_exact(0.0, s) == 0.0);
  CHECK(bulge_height_exact(saturation_pressure(s) * 1.5, s) == s.h_max);
  CHECK(bulge_height_exact(saturation_pressure(s), s) == s.h_max);
  CHECK_THROWS_AS(bulge_height_exact(-1.0, s), std::domain_error);
}

TEST_CASE("exact height inverts the pressure law on random specs") {
  std::mt19937_64 rng(11);
  for (int i = 0; i < 300; ++i) {
    const MembraneSpec s = random_spec(rng);
    const double h = testing_support::uniform(rng, 1e-9, 1.0) * s.h_max;
    CHECK(rel(bulge_height_exact(bulge_pressure(h, s), s), h) <= 1e-9);
  }
}

TEST_CASE("exact height matches the closed-form cubic root") {
  std::mt19937_64 rng(12);
  for (int i = 0; i < 300; ++i) {
    const MembraneSpec s = random_spec(rng);
    const double p = testing_support::uniform(rng, 0.0, 1.0) * saturation_pressure(s);
    const double want = oracle::height(p, testing_support::to_oracle(s));
    CHECK(std::abs(bulge_height_exact(p, s) - want) <= 1e-10 * want + 1e-18);
  }
}

TEST_CASE("linear and exact agree where the cubic term is negligible") {
  std::mt19937_64 rng(13);
  for (int i = 0; i < 200; ++i) {
    const MembraneSpec s = random_spec(rng);
    // Cubic/linear term ratio is (cubic/linear) h^2; pick h with ratio 1e-5.
    const double ratio = 2.0 * s.E / (3.0 * (1.0 - s.nu * s.nu) * s.sigma0 * s.a * s.a);
    const double h = std::min(std::sqrt(1e-5 / ratio), s.h_max);
    const double p = bulge_pressure(h, s);
    const double exact = bulge_height_exact(p, s);
    CHECK(std::abs(exact - bulge_height_linear(p, s)) / exact < 1e-3);
  }
}

TEST_CASE("heights are non-decreasing in pressure") {
  std::mt19937_64 rng(14);
  for (int i = 0; i < 50; ++i) {
    const MembraneSpec s = random_spec(rng);
    const double top = 1.2 * saturation_pressure(s);
    double prev_exact = 0.0, prev_linear = 0.0;
    for (int k = 0; k <= 200; ++k) {
      const double p = top * k / 200.0;
      const double e = bulge_height_exact(p, s), l = bulge_height_linear(p, s);
      CHECK(e >= prev_exact);
      CHECK(l >= prev_linear);
      prev_exact = e;
      prev_linear = l;
    }
  }
}

TEST_CASE("bulge pressure is strictly increasing") {
  const MembraneSpec s = reference_spec();
  double prev = -1.0;
  for (int k = 0; k <= 1000; ++k) {
    const double p = bulge_pressure(s.h_max * k / 1000.0, s);
    CHECK(p > prev);
    prev = p;
  }
}

TEST_CASE("flat membrane has no cap") {
  const MembraneSpec s = reference_spec();
  const BulgeState b = resolve_bulge(0.0, s);
  CHECK(b.h == 0.0);
  CHECK_FALSE(b.radius.has_value());
  CHECK_FALSE(b.has_cap());
  CHECK(b.s == -s.g);
}

TEST_CASE("hemispherical cap has radius a") {
  CHECK(cap_radius(4e-3, 4e-3).value() == doctest::Approx(4e-3).epsilon(1e-15));
  CHECK_FALSE(cap_radius(0.0, 4e-3).has_value());
}

TEST_CASE("linear-mode bulge at 6250 Pa") {
  const MembraneSpec s = soft_spec();
  const BulgeState b = resolve_bulge(6250.0, s, BulgeMode::Linear);
  const double h = 1.6e-8 * 6250.0;
  CHECK(b.h == doctest::Approx(h).epsilon(1e-14));
  CHECK(*b.radius == doctest::Approx((16e-6 + h * h) / (2.0 * h)).epsilon(1e-14));
  CHECK(b.s == doctest::Approx(h - s.g).epsilon(1e-14));
}

TEST_CASE("cap identity and protrusion hold exactly") {
  std::mt19937_64 rng(15);
  for (int i = 0; i < 500; ++i) {
    const MembraneSpec s = random_spec(rng);
    const double p = testing_support::uniform(rng, 1.0, 1.1 * saturation_pressure(s));
    for (BulgeMode mode : {BulgeMode::Exact, BulgeMode::Linear}) {
      const BulgeState b = resolve_bulge(p, s, mode);
      REQUIRE(b.has_cap());
      CHECK(b.h <= s.h_max);
      CHECK(rel(2.0 * *b.radius * b.h, s.a * s.a + b.h * b.h) <= 1e-15);
      CHECK(b.s == b.h - s.g);
    }
  }
}

TEST_CASE("cap radius is minimal at h = a") {
  const double a = 3e-3;
  double prev = INFINITY;
  for (int k = 1; k <= 100; ++k) {
    const double r = *cap_radius(a * k / 100.0, a);
    CHECK(r < prev);
    prev = r;
  }
  for (int k = 101; k <= 200; ++k) {
    const double r = *cap_radius(a * k / 100.0, a);
    CHECK(r > prev);
    prev = r;
  }
}

TEST_CASE("spec validation names the offending field") {
  auto field_of = [](MembraneSpec s) -> std::string {
    try {
      validate(s);
    } catch (const InvalidParameter& e) {
      return e.field();
    }
    return "";
  };
  MembraneSpec s = reference_spec();
  CHECK(field_of(s).empty());
  s.nu = 0.5;
  CHECK(field_of(s) == "nu");
  s = reference_spec();
  s.g = s.h_max;
  CHECK(field_of(s) == "h_max");
  s = reference_spec();
  s.eta = -1e-9;
  CHECK(field_of(s) == "eta");
  s = reference_spec();
  s.tau_s = 0.0;
  CHECK(field_of(s) == "tau_s");
}

TEST_CASE("bulge mode tags") {
  CHECK(parse_bulge_mode("exact") == BulgeMode::Exact);
  CHECK(parse_bulge_mode("linear") == BulgeMode::Linear);
  CHECK_FALSE(parse_bulge_mode("Exact").has_value());
  CHECK(to_string(BulgeMode::Linear) == "linear");
}
