#pragma once

#include "prepot/model.hpp"

#include <span>
#include <string>
#include <vector>

namespace prepot {

enum class SeedStrategy { ChebyshevSpread, Continuation, UserSupplied };

std::string seed_strategy_name(SeedStrategy s);

struct BaeSolution {
  int N = 0;
  std::vector<double> roots; // ascending
  double residual_norm = 0.0;
  int iterations = 0;
  SeedStrategy seed_strategy = SeedStrategy::ChebyshevSpread;
};

// Left-hand sides of the Bethe ansatz equations for the model's family at
// level roots.size(). Throws CoincidentRoots if two roots coincide.
std::vector<double> bae_residual(const ModelSpec& model, std::span<const double> roots);

// Damped Newton with analytic Jacobian; deterministic for a given (model, N).
BaeSolution solve_bae(const ModelSpec& model, int N);

// Newton from caller-provided starting roots. Throws NoConvergence on failure.
BaeSolution solve_bae_from(const ModelSpec& model, std::span<const double> seed,
                           SeedStrategy strategy = SeedStrategy::UserSupplied);

// Levels 1..n_max, each seeded from the previous level's roots.
std::vector<BaeSolution> continuation_sweep(const ModelSpec& model, int n_max);

} // namespace prepot
