#include "prepot/verify.hpp"

#include "prepot/errors.hpp"
#include "prepot/susy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace prepot {

namespace {

constexpr int initial_fd_points = 4000;
constexpr int max_fd_points = 1 << 19;

// Number of eigenvalues of the tridiagonal matrix below sigma.
int sturm_count(std::span<const double> diag, double off_sq, double sigma) {
  int count = 0;
  double q = 1.0;
  for (std::size_t i = 0; i < diag.size(); ++i) {
    q = diag[i] - sigma - (i == 0 ? 0.0 : off_sq / q);
    if (q == 0.0) q = -std::numeric_limits<double>::min();
    if (q < 0.0) ++count;
  }
  return count;
}

double l2(std::span<const double> v) {
  double s = 0.0;
  for (double x : v) s += x * x;
  return std::sqrt(s);
}

GridSpec grid_on(const Interval& w, int points) { return {w.lo, w.hi, points}; }

} // namespace

std::vector<double> GridSpec::nodes() const {
  std::vector<double> x(static_cast<std::size_t>(points));
  const double h = spacing();
  for (int i = 0; i < points; ++i) x[i] = x_min + h * i;
  x.back() = x_max;
  return x;
}

std::vector<double> GridSpec::interior_nodes() const {
  std::vector<double> x = nodes();
  return {x.begin() + 1, x.end() - 1};
}

void validate_grid(const GridSpec& grid) {
  if (grid.points < 64) throw GridTooCoarse("grid needs at least 64 points, got " + std::to_string(grid.points));
  if (!(grid.x_min < grid.x_max) || !std::isfinite(grid.x_min) || !std::isfinite(grid.x_max))
    throw InputError("grid requires finite x_min < x_max");
}

std::vector<double> fd_eigensolve(std::span<const double> potential, const GridSpec& grid, int k) {
  validate_grid(grid);
  const int n = grid.points - 2;
  if (static_cast<int>(potential.size()) != n) throw InputError("potential must be sampled on the interior nodes");
  if (k < 0 || k > grid.points / 8) throw InputError("requested more eigenvalues than points/8");

  const double h = grid.spacing();
  const double kinetic = 1.0 / (h * h);
  std::vector<double> diag(static_cast<std::size_t>(n));
  double vmin = std::numeric_limits<double>::infinity();
  double vmax = -vmin;
  for (int i = 0; i < n; ++i) {
    if (!std::isfinite(potential[i])) throw ConvergenceFailure("potential is not finite on the grid");
    diag[i] = 2.0 * kinetic + potential[i];
    vmin = std::min(vmin, potential[i]);
    vmax = std::max(vmax, potential[i]);
  }
  const double off_sq = kinetic * kinetic;

  std::vector<double> values;
  values.reserve(static_cast<std::size_t>(k));
  double floor = vmin;
  for (int j = 0; j < k; ++j) {
    double lo = floor;
    double hi = vmax + 4.0 * kinetic;
    if (sturm_count(diag, off_sq, lo) > j) lo = vmin; // degenerate neighbours
    int it = 0;
    for (; it < 300; ++it) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (sturm_count(diag, off_sq, mid) > j)
        hi = mid;
      else
        lo = mid;
    }
    if (it == 300) throw ConvergenceFailure("bisection did not close the eigenvalue bracket");
    values.push_back(0.5 * (lo + hi));
    floor = lo;
  }
  return values;
}

std::vector<double> fd_eigensolve(const PotentialFn& v, const GridSpec& grid, int k) {
  validate_grid(grid);
  std::vector<double> pot;
  pot.reserve(static_cast<std::size_t>(grid.points - 2));
  for (double x : grid.interior_nodes()) pot.push_back(v(x));
  return fd_eigensolve(pot, grid, k);
}

int sign_changes(std::span<const double> values) {
  int changes = 0;
  int last = 0;
  for (double v : values) {
    const int s = (v > 0.0) - (v < 0.0);
    if (s == 0) continue;
    if (last != 0 && s != last) ++changes;
    last = s;
  }
  return changes;
}

double wavefunction_residual(const ModelSpec& model, const Eigenpair& eigenpair, const GridSpec& grid) {
  if (grid.points < 16) throw GridTooCoarse("wavefunction residual needs at least 16 points");
  if (static_cast<int>(eigenpair.values.size()) != grid.points || eigenpair.x.size() != eigenpair.values.size())
    throw InputError("eigenpair is not sampled on the given grid");
  const double h = grid.spacing();
  const auto& phi = eigenpair.values;
  double r2 = 0.0;
  double p2 = 0.0;
  for (int i = 1; i + 1 < grid.points; ++i) {
    const double lap = (phi[i + 1] - 2.0 * phi[i] + phi[i - 1]) / (h * h);
    const double r = -lap + (potential_v0(model, eigenpair.x[i]) - eigenpair.energy) * phi[i];
    r2 += r * r;
    p2 += phi[i] * phi[i];
  }
  return std::sqrt(r2 / p2) / (1.0 + std::abs(eigenpair.energy));
}

Interval wavefunction_window(const ModelSpec& model, int N, std::span<const double> roots, double drop) {
  const Interval domain = model.form().x_domain;
  const Interval base = truncated_domain(model, energy(model, N));
  const double inset = 1e-3 * model.form().natural_length();
  const double lo = domain.bounded_below() ? std::max(base.lo, domain.lo + inset) : base.lo;
  const double hi = domain.bounded_above() ? std::min(base.hi, domain.hi - inset) : base.hi;

  constexpr int probe = 20001;
  std::vector<double> logs(probe);
  double log_max = -std::numeric_limits<double>::infinity();
  for (int i = 0; i < probe; ++i) {
    int sign = 0;
    logs[i] = log_abs_eigenfunction(model, N, roots, lo + (hi - lo) * i / (probe - 1), sign);
    log_max = std::max(log_max, logs[i]);
  }
  const double threshold = log_max + std::log(drop);
  int first = probe - 1;
  int last = 0;
  for (int i = 0; i < probe; ++i)
    if (logs[i] >= threshold) {
      first = std::min(first, i);
      last = i;
    }
  first = std::max(first - 1, 0);
  last = std::min(last + 1, probe - 1);
  return {lo + (hi - lo) * first / (probe - 1), lo + (hi - lo) * last / (probe - 1)};
}

double energy_tolerance(const ModelSpec& model) {
  return has_singular_wall(model) ? tolerance::energy_singular : tolerance::energy_regular;
}

FdSpectrum fd_spectrum(const PotentialFn& v, const Interval& window, int k, double tol, std::optional<int> points) {
  if (points) {
    const GridSpec grid = grid_on(window, *points);
    return {grid, fd_eigensolve(v, grid, k)};
  }
  int p = initial_fd_points;
  GridSpec grid = grid_on(window, p);
  std::vector<double> coarse = fd_eigensolve(v, grid, k);
  while (true) {
    const int finer = 2 * p - 1;
    const GridSpec fine_grid = grid_on(window, finer);
    std::vector<double> fine = fd_eigensolve(v, fine_grid, k);
    double change = 0.0;
    for (int j = 0; j < k; ++j) change = std::max(change, std::abs(fine[j] - coarse[j]));
    if (change <= tol / 20.0 || finer > max_fd_points) return {fine_grid, std::move(fine)};
    p = finer;
    coarse = std::move(fine);
  }
}

FdSpectrum default_fd_spectrum(const ModelSpec& model, int n_max, std::optional<int> points) {
  const Interval window = truncated_domain(model, energy(model, n_max));
  return fd_spectrum([&](double x) { return potential_v0(model, x); }, window, n_max + 1, energy_tolerance(model),
                     points);
}

std::vector<double> fd_convergence_ratios(const ModelSpec& model, int levels, int points) {
  const Interval window = truncated_domain(model, energy(model, levels - 1));
  auto v = [&](double x) { return potential_v0(model, x); };
  const std::vector<double> coarse = fd_eigensolve(v, grid_on(window, points), levels);
  const std::vector<double> fine = fd_eigensolve(v, grid_on(window, 2 * points - 1), levels);
  std::vector<double> ratios;
  for (int j = 0; j < levels; ++j) {
    const double exact = energy(model, j);
    ratios.push_back(std::abs(coarse[j] - exact) / std::abs(fine[j] - exact));
  }
  return ratios;
}

VerificationReport full_report(const ModelSpec& model, int n_max, const ReportOptions& options) {
  require_level(model, n_max);
  VerificationReport report;
  report.model = model.name;
  report.n_max = n_max;
  report.singular = has_singular_wall(model);
  report.energy_tolerance = energy_tolerance(model);
  const int check_points = options.grid_points.value_or(check_grid_points);

  const FdSpectrum spectrum = default_fd_spectrum(model, n_max, options.grid_points);
  report.fd_grid = spectrum.grid;

  std::vector<BaeSolution> solutions{BaeSolution{}};
  for (auto& s : continuation_sweep(model, n_max)) solutions.push_back(std::move(s));

  bool ok = true;
  Eigenpair ground;
  for (int N = 0; N <= n_max; ++N) {
    LevelRecord rec;
    rec.N = N;
    rec.E_analytic = energy(model, N);
    rec.E_fd = spectrum.values[N];
    rec.abs_err = std::abs(rec.E_fd - rec.E_analytic);

    const Interval w = wavefunction_window(model, N, solutions[N].roots, wavefunction_drop);
    const GridSpec grid = grid_on(w, check_points);
    Eigenpair pair = eigenfunction(model, solutions[N], grid.nodes());
    rec.wave_residual = wavefunction_residual(model, pair, grid);
    rec.nodes = sign_changes(pair.values);
    ok = ok && rec.abs_err <= report.energy_tolerance && rec.wave_residual <= tolerance::wave_residual &&
         rec.nodes == N;
    if (N == 0) ground = std::move(pair);
    report.levels.push_back(rec);
  }

  const std::vector<double> lowered = apply_lowering(model, ground.x, ground.values);
  report.susy.ground_annihilation = l2(lowered) / l2(ground.values);
  ok = ok && report.susy.ground_annihilation <= tolerance::ground_annihilation;

  if (n_max >= 1) {
    const double e0 = energy(model, 0);
    const Interval window = truncated_domain([&](double x) { return partner_potential(model, x); },
                                             model.form().x_domain, energy(model, n_max) - e0,
                                             model.form().natural_length());
    const FdSpectrum partner = fd_spectrum([&](double x) { return partner_potential(model, x); }, window, n_max,
                                           report.energy_tolerance, options.grid_points);
    for (int n = 0; n < n_max; ++n) {
      PartnerRecord rec{n, partner.values[n], spectrum.values[n + 1] - e0, 0.0};
      rec.abs_diff = std::abs(rec.E_partner_fd - rec.E_original_fd);
      report.susy.partner_gap_match = std::max(report.susy.partner_gap_match, rec.abs_diff);
      report.susy.partner_levels.push_back(rec);
    }
    ok = ok && report.susy.partner_gap_match <= tolerance::partner_factor * report.energy_tolerance;
  }

  {
    const Interval w = report.fd_grid.x_min == 0.0 && report.fd_grid.x_max == 0.0
                           ? Interval{0.0, 1.0}
                           : Interval{report.fd_grid.x_min, report.fd_grid.x_max};
    const Interval& domain = model.form().x_domain;
    const double margin = 0.01 * (w.hi - w.lo);
    const double lo = domain.bounded_below() ? w.lo + margin : w.lo;
    const double hi = domain.bounded_above() ? w.hi - margin : w.hi;
    report.si_residual = si_residual_numeric(model, GridSpec{lo, hi, 2001}.nodes());
    ok = ok && report.si_residual <= tolerance::si_residual;
  }

  const double e0 = energy(model, 0);
  for (int n = 0; n <= n_max; ++n)
    report.si_telescoping =
        std::max(report.si_telescoping, std::abs(spectrum_via_si(model, n) - (energy(model, n) - e0)));
  ok = ok && report.si_telescoping <= tolerance::telescoping;

  report.passed = ok;
  return report;
}

} // namespace prepot
