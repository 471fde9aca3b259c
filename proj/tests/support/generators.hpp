#pragma once

// Hand-rolled random generators for property tests. Every test seeds its own
// engine so failures replay deterministically.

#include <cmath>
#include <random>

#include "ptgauge/gauge_engine.hpp"

namespace ptgauge::testing {

using Engine = std::mt19937_64;

inline double uniform(Engine& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline Complex complex_uniform(Engine& rng, double r) {
  return {uniform(rng, -r, r), uniform(rng, -r, r)};
}

inline Branch random_branch(Engine& rng) {
  return std::bernoulli_distribution(0.5)(rng) ? Branch::Plus : Branch::Minus;
}

/// |Omega|, |G| <= bound, omega in (0, bound], random branch. Draws with a
/// vanishing Delta are skipped.
inline ModelParams random_params(Engine& rng, double bound = 10.0) {
  for (;;) {
    ModelParams p;
    p.omega_cap = uniform(rng, -bound, bound);
    p.coupling = uniform(rng, -bound, bound);
    p.drive = bound * (1.0 - uniform(rng, 0.0, 1.0));
    p.branch = random_branch(rng);
    if (std::hypot(p.drive + p.omega_cap, 2.0 * p.coupling) > 1e-6) return p;
  }
}

/// Same range, branch forced to the normalizable one and |eta| kept below
/// eta_max so truncated Fock computations stay well conditioned.
inline ModelParams random_normalizable_params(Engine& rng, double bound, double eta_max) {
  for (;;) {
    ModelParams p = random_params(rng, bound);
    const auto b = normalizable_branch(p);
    if (!b) continue;
    p.branch = *b;
    if (std::abs(solve_auxiliary(p).eta) < eta_max) return p;
  }
}

inline ModelParams acceptance_params(Branch b) { return {2.0, 0.5, 1.0, b}; }

}  // namespace ptgauge::testing
