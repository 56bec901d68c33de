#include "prepot/bae.hpp"

#include "prepot/errors.hpp"
#include "prepot/prepotential.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

namespace prepot {

namespace {

constexpr int max_newton_iterations = 200;
constexpr int seed_count = 8;
constexpr std::uint32_t perturbation_seed = 0x5eedu;
constexpr double accept_tolerance = 1e-10;

// sign * [ c1 z_k + c0 - sum_{l != k} G(z_k) / (z_k - z_l) ],  G(z) = g2 z^2 + g1 z + g0.
struct BaeSystem {
  double c1;
  double c0;
  double g2;
  double g1;
  double g0;
  double sign;

  double g(double z) const { return (g2 * z + g1) * z + g0; }
  double dg(double z) const { return 2.0 * g2 * z + g1; }
};

BaeSystem system_for(const ModelSpec& model, int N) {
  if (const auto* s = std::get_if<SinusoidalModel>(&model.family)) {
    const QuadraticQ& q = s->q;
    return {s->a - 0.5 * q.alpha, s->b - 0.25 * q.beta, q.alpha, q.beta, q.gamma, 1.0};
  }
  const auto& n = std::get<NonSinusoidalModel>(model.family);
  const double k = n.A + N;
  return {k - 1.0, -n.B / k, 1.0, 0.0, -n.lambda, -1.0};
}

double min_gap(std::span<const double> z) {
  double gap = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < z.size(); ++i)
    for (std::size_t j = i + 1; j < z.size(); ++j) gap = std::min(gap, std::abs(z[i] - z[j]));
  return gap;
}

double max_abs(std::span<const double> z) {
  double m = 0.0;
  for (double v : z) m = std::max(m, std::abs(v));
  return m;
}

bool coincident(std::span<const double> z, double threshold) { return min_gap(z) < threshold * (1.0 + max_abs(z)); }

Eigen::VectorXd bracket(const BaeSystem& sys, const Eigen::VectorXd& z) {
  const Eigen::Index n = z.size();
  Eigen::VectorXd f(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    double sum = 0.0;
    for (Eigen::Index l = 0; l < n; ++l)
      if (l != k) sum += 1.0 / (z[k] - z[l]);
    f[k] = sys.c1 * z[k] + sys.c0 - sys.g(z[k]) * sum;
  }
  return f;
}

Eigen::MatrixXd jacobian(const BaeSystem& sys, const Eigen::VectorXd& z) {
  const Eigen::Index n = z.size();
  Eigen::MatrixXd j(n, n);
  for (Eigen::Index k = 0; k < n; ++k) {
    const double gk = sys.g(z[k]);
    const double dgk = sys.dg(z[k]);
    double diag = sys.c1;
    for (Eigen::Index l = 0; l < n; ++l) {
      if (l == k) continue;
      const double d = z[k] - z[l];
      diag -= (dgk * d - gk) / (d * d);
      j(k, l) = -gk / (d * d);
    }
    j(k, k) = diag;
  }
  return j;
}

struct NewtonOutcome {
  bool converged = false;
  std::vector<double> roots;
  double residual = 0.0;
  int iterations = 0;
};

NewtonOutcome damped_newton(const BaeSystem& sys, std::vector<double> start) {
  NewtonOutcome out;
  std::sort(start.begin(), start.end());
  if (coincident(start, 1e-12)) return out;
  Eigen::VectorXd z = Eigen::Map<const Eigen::VectorXd>(start.data(), static_cast<Eigen::Index>(start.size()));
  Eigen::VectorXd f = bracket(sys, z);
  double norm = f.lpNorm<Eigen::Infinity>();

  int it = 0;
  for (; it < max_newton_iterations; ++it) {
    if (!std::isfinite(norm)) return out;
    const double scale = 1.0 + z.lpNorm<Eigen::Infinity>();
    if (norm <= 1e-15 * scale * (1.0 + std::abs(sys.c1))) break;
    const Eigen::VectorXd step = jacobian(sys, z).colPivHouseholderQr().solve(-f);
    if (!step.allFinite()) return out;

    double t = 1.0;
    bool accepted = false;
    while (t > 1e-10) {
      const Eigen::VectorXd trial = z + t * step;
      if (!coincident({trial.data(), static_cast<std::size_t>(trial.size())}, 1e-12)) {
        const Eigen::VectorXd ft = bracket(sys, trial);
        const double nt = ft.lpNorm<Eigen::Infinity>();
        if (nt < norm) {
          z = trial;
          f = ft;
          norm = nt;
          accepted = true;
          break;
        }
      }
      t *= 0.5;
    }
    if (!accepted) break;
    if (t * step.lpNorm<Eigen::Infinity>() <= 1e-16 * scale) {
      ++it;
      break;
    }
  }

  out.roots.assign(z.data(), z.data() + z.size());
  std::sort(out.roots.begin(), out.roots.end());
  out.iterations = it;
  out.residual = norm;
  out.converged = std::isfinite(norm) && norm <= accept_tolerance && !coincident(out.roots, 1e-9);
  return out;
}

std::vector<double> chebyshev_seed(const ModelSpec& model, int N) {
  const Interval region = classical_region(model, energy(model, N));
  const double mid = 0.5 * (region.lo + region.hi);
  const double half = 0.5 * (region.hi - region.lo);
  std::vector<double> seed(N);
  for (int j = 0; j < N; ++j) {
    const double x = mid + half * std::cos(std::numbers::pi * (2.0 * j + 1.0) / (2.0 * N));
    seed[j] = model_coordinate(model, x).z;
  }
  std::sort(seed.begin(), seed.end());
  return seed;
}

BaeSolution to_solution(const NewtonOutcome& o, int N, SeedStrategy strategy, int extra_iterations) {
  return {N, o.roots, o.residual, o.iterations + extra_iterations, strategy};
}

} // namespace

std::string seed_strategy_name(SeedStrategy s) {
  switch (s) {
  case SeedStrategy::ChebyshevSpread: return "chebyshev";
  case SeedStrategy::Continuation: return "continuation";
  case SeedStrategy::UserSupplied: return "user";
  }
  return "?";
}

std::vector<double> bae_residual(const ModelSpec& model, std::span<const double> roots) {
  if (roots.size() > 1 && min_gap(roots) == 0.0)
    throw CoincidentRoots("Bethe ansatz residual undefined for coincident roots");
  const BaeSystem sys = system_for(model, static_cast<int>(roots.size()));
  Eigen::VectorXd z = Eigen::Map<const Eigen::VectorXd>(roots.data(), static_cast<Eigen::Index>(roots.size()));
  const Eigen::VectorXd f = sys.sign * bracket(sys, z);
  return {f.data(), f.data() + f.size()};
}

BaeSolution solve_bae_from(const ModelSpec& model, std::span<const double> seed, SeedStrategy strategy) {
  const int N = static_cast<int>(seed.size());
  require_level(model, N);
  if (N == 0) return {0, {}, 0.0, 0, strategy};
  const NewtonOutcome o = damped_newton(system_for(model, N), {seed.begin(), seed.end()});
  if (!o.converged) {
    std::ostringstream os;
    os << "Newton iteration from the supplied seed did not converge for N = " << N << " (residual " << o.residual
       << ")";
    throw NoConvergence(os.str());
  }
  return to_solution(o, N, strategy, 0);
}

BaeSolution solve_bae(const ModelSpec& model, int N) {
  require_level(model, N);
  if (N == 0) return {};
  const BaeSystem sys = system_for(model, N);
  const std::vector<double> base = chebyshev_seed(model, N);
  const double spacing = N > 1 ? min_gap(base) : 0.1 * (1.0 + std::abs(base[0]));

  std::mt19937 rng(perturbation_seed);
  std::uniform_real_distribution<double> jitter(-0.5, 0.5);
  int spent = 0;
  double best = std::numeric_limits<double>::infinity();
  for (int attempt = 0; attempt < seed_count; ++attempt) {
    std::vector<double> seed = base;
    if (attempt > 0)
      for (double& z : seed) z += 0.25 * attempt * spacing * jitter(rng);
    const NewtonOutcome o = damped_newton(sys, seed);
    if (o.converged) return to_solution(o, N, SeedStrategy::ChebyshevSpread, spent);
    spent += o.iterations;
    best = std::min(best, o.residual);
  }
  std::ostringstream os;
  os << "Bethe ansatz solver failed for N = " << N << " after " << seed_count << " seeds";
  if (std::isfinite(best)) os << " (best residual " << best << ")";
  throw NoConvergence(os.str());
}

std::vector<BaeSolution> continuation_sweep(const ModelSpec& model, int n_max) {
  std::vector<BaeSolution> out;
  if (n_max <= 0) return out;
  require_level(model, n_max);
  out.reserve(static_cast<std::size_t>(n_max));
  out.push_back(solve_bae(model, 1));
  for (int N = 2; N <= n_max; ++N) {
    const std::vector<double>& prev = out.back().roots;
    const double lo_gap = prev.size() > 1 ? prev[1] - prev[0] : 0.5 * (1.0 + std::abs(prev[0]));
    const double hi_gap = prev.size() > 1 ? prev[prev.size() - 1] - prev[prev.size() - 2] : lo_gap;
    std::vector<double> seed;
    seed.reserve(static_cast<std::size_t>(N));
    seed.push_back(prev.front() - 0.5 * lo_gap);
    for (std::size_t i = 0; i + 1 < prev.size(); ++i) seed.push_back(0.5 * (prev[i] + prev[i + 1]));
    seed.push_back(prev.back() + 0.5 * hi_gap);

    const NewtonOutcome o = damped_newton(system_for(model, N), seed);
    if (o.converged) {
      out.push_back(to_solution(o, N, SeedStrategy::Continuation, 0));
      continue;
    }
    try {
      out.push_back(solve_bae(model, N));
    } catch (const NoConvergence& e) {
      throw NoConvergence("continuation sweep failed at level " + std::to_string(N) + ": " + e.what());
    }
  }
  return out;
}

} // namespace prepot
