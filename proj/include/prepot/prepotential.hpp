#pragma once

#include "prepot/bae.hpp"
#include "prepot/model.hpp"

#include <functional>
#include <span>
#include <vector>

namespace prepot {

// Coordinate in the model's own z (the user's Q), not the canonical one.
CoordinateValue model_coordinate(const ModelSpec& model, double x);

// Zeroth-order prepotential and its derivatives. `level` only matters for the
// non-sinusoidal family, whose W0 coefficients depend on N.
double w0(const ModelSpec& model, int level, double x);
double w0_prime(const ModelSpec& model, int level, double x);
double w0_second(const ModelSpec& model, int level, double x);

// The solvable potential: W0'^2 - W0'' for sinusoidal models, and
// A(A-1) z^2 - 2 B z for the non-sinusoidal family.
double potential_v0(const ModelSpec& model, double x);

// W0'^2 - W0'' at level 0; the H = A+A form whose ground state sits at zero.
// Equal to potential_v0 - energy(model, 0).
double factorized_potential(const ModelSpec& model, double x);

// Bound-state energy on the same scale as potential_v0.
double energy(const ModelSpec& model, int N);

// W_N'^2 - W_N'' for the N-th order prepotential built from `roots`.
double order_n_potential(const ModelSpec& model, std::span<const double> roots, double x);

struct Eigenpair {
  int N = 0;
  double energy = 0.0;
  std::vector<double> x;
  std::vector<double> values; // unnormalized, scaled so max |phi| = 1
  std::vector<double> roots;
};

// log|phi_N(x)| and its sign, without overflow in the tails.
double log_abs_eigenfunction(const ModelSpec& model, int N, std::span<const double> roots, double x, int& sign);

Eigenpair eigenfunction(const ModelSpec& model, const BaeSolution& solution, std::span<const double> x_grid);

// Largest residue of the simple poles left in V_N; zero for exact roots.
double pole_cancellation_check(const ModelSpec& model, const BaeSolution& solution);

using PotentialFn = std::function<double(double)>;

// Finite window of `domain`: finite endpoints are kept, infinite ones are cut
// where the WKB decay exponent past the turning point of `energy` reaches `decay`.
Interval truncated_domain(const PotentialFn& v, const Interval& domain, double energy, double length,
                          double decay = 30.0);
Interval truncated_domain(const ModelSpec& model, double energy, double decay = 30.0);

// Where potential_v0 <= energy inside the truncated domain.
Interval classical_region(const ModelSpec& model, double energy);

// True when potential_v0 diverges at a finite wall of the domain.
bool has_singular_wall(const ModelSpec& model);

} // namespace prepot
