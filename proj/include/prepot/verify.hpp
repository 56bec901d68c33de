#pragma once

#include "prepot/prepotential.hpp"

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace prepot {

// Uniform grid of `points` nodes on [x_min, x_max], endpoints included.
// Finite-difference solves put Dirichlet walls on the two endpoints.
struct GridSpec {
  double x_min = 0.0;
  double x_max = 1.0;
  int points = 64;

  double spacing() const { return (x_max - x_min) / (points - 1); }
  std::vector<double> nodes() const;
  std::vector<double> interior_nodes() const;
};

void validate_grid(const GridSpec& grid);

// Lowest k eigenvalues of -d^2/dx^2 + V with the 3-point stencil on the
// interior nodes, ascending. `potential` holds V at interior_nodes().
std::vector<double> fd_eigensolve(std::span<const double> potential, const GridSpec& grid, int k);
std::vector<double> fd_eigensolve(const PotentialFn& v, const GridSpec& grid, int k);

int sign_changes(std::span<const double> values);

// Relative L2 norm of -phi'' + (V0 - E) phi on the interior nodes.
double wavefunction_residual(const ModelSpec& model, const Eigenpair& eigenpair, const GridSpec& grid);

// Window on which |phi_N| stays above `drop` times its maximum, clipped to
// the domain (finite walls are moved in slightly so phi can be evaluated).
Interval wavefunction_window(const ModelSpec& model, int N, std::span<const double> roots, double drop);

namespace tolerance {
inline constexpr double energy_regular = 2e-3;
inline constexpr double energy_singular = 5e-3;
inline constexpr double partner_factor = 2.0;
inline constexpr double wave_residual = 1e-4;
inline constexpr double ground_annihilation = 1e-5;
inline constexpr double si_residual = 1e-9;
inline constexpr double telescoping = 1e-12;
} // namespace tolerance

inline constexpr int check_grid_points = 4000;
inline constexpr double wavefunction_drop = 1e-5;

double energy_tolerance(const ModelSpec& model);

struct FdSpectrum {
  GridSpec grid;
  std::vector<double> values;
};

// Solves on successively halved grids until the lowest k eigenvalues move by
// less than `tol`/20, or solves once on `points` when given.
FdSpectrum fd_spectrum(const PotentialFn& v, const Interval& window, int k, double tol,
                       std::optional<int> points = std::nullopt);

// Finite-difference spectrum of potential_v0 for levels 0..n_max on the
// default truncated domain.
FdSpectrum default_fd_spectrum(const ModelSpec& model, int n_max, std::optional<int> points = std::nullopt);

// |E(h) - E| / |E(h/2) - E| for levels 0..levels-1, starting from `points` nodes.
std::vector<double> fd_convergence_ratios(const ModelSpec& model, int levels, int points);

struct LevelRecord {
  int N = 0;
  double E_analytic = 0.0;
  double E_fd = 0.0;
  double abs_err = 0.0;
  double wave_residual = 0.0;
  int nodes = 0;
};

struct PartnerRecord {
  int n = 0;
  double E_partner_fd = 0.0;  // level n of H1 = A A+
  double E_original_fd = 0.0; // level n+1 of H0 = A+ A
  double abs_diff = 0.0;
};

struct SusyChecks {
  double ground_annihilation = 0.0;
  double partner_gap_match = 0.0; // max abs_diff
  std::vector<PartnerRecord> partner_levels;
};

struct VerificationReport {
  std::string model;
  int n_max = 0;
  bool singular = false;
  double energy_tolerance = 0.0;
  GridSpec fd_grid;
  std::vector<LevelRecord> levels;
  SusyChecks susy;
  double si_residual = 0.0;
  double si_telescoping = 0.0;
  bool passed = false;
};

struct ReportOptions {
  // Overrides every grid used by the report; disables refinement.
  std::optional<int> grid_points;
};

VerificationReport full_report(const ModelSpec& model, int n_max, const ReportOptions& options = {});

} // namespace prepot
