#pragma once

#include <cmath>
#include <random>

#include "pocketgrip/membrane.hpp"
#include "../oracle/straight_line_model.hpp"

namespace testing_support {

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
  std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
  return std::exp(u(rng));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline pocketgrip::MembraneSpec random_spec(std::mt19937_64& rng) {
  pocketgrip::MembraneSpec s;
  s.sigma0 = log_uniform(rng, 0.2e6, 2e6);
  s.t = log_uniform(rng, 0.5e-3, 2e-3);
  s.a = log_uniform(rng, 2e-3, 6e-3);
  s.E = log_uniform(rng, 0.3e6, 3e6);
  s.nu = uniform(rng, 0.3, 0.49);
  s.h_max = log_uniform(rng, 1e-3, 4e-3);
  s.g = uniform(rng, 0.0, 0.5e-3);
  s.E0 = log_uniform(rng, 0.05e6, 1e6);
  s.eta = uniform(rng, 0.0, 5e-6);
  s.tau_s = log_uniform(rng, 5e3, 1e5);
  s.mu_rim = uniform(rng, 0.05, 0.5);
  return s;
}

inline oracle::Spec to_oracle(const pocketgrip::MembraneSpec& s) {
  return {s.sigma0, s.t, s.a, s.E, s.nu, s.h_max, s.g, s.E0, s.eta, s.tau_s, s.mu_rim};
}

}  // namespace testing_support
