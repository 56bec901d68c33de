#include "prepot/prepotential.hpp"

#include "prepot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace prepot {

namespace {

constexpr double ln2 = std::numbers::ln2;

double log_cosh(double y) {
  const double ay = std::abs(y);
  return ay + std::log1p(std::exp(-2.0 * ay)) - ln2;
}

// y > 0
double log_sinh(double y) { return y + std::log1p(-std::exp(-2.0 * y)) - ln2; }

double sinusoidal_w0(const SinusoidalModel& m, double x) {
  const auto [a, b] = m.canonical();
  const double cx = coordinate_closed_form(m.form, x).z; // domain check
  if (const auto* c = std::get_if<ConstQ>(&m.form.variant)) return 0.5 * a * x * x + b * x / std::sqrt(c->gamma);
  if (const auto* l = std::get_if<LinearQ>(&m.form.variant))
    return 0.25 * a * x * x + 2.0 * b / l->beta * std::log(x);
  const auto& q = std::get<QuadQ>(m.form.variant);
  const double alpha = q.alpha;
  const double s = std::sqrt(std::abs(alpha));
  if (alpha < 0.0) return (a * -std::log(std::cos(s * x)) + b * std::atanh(cx)) / -alpha;
  if (q.delta == 0) return a * x / s - b * std::exp(-s * x) / alpha;
  if (q.delta == 1) return (a * log_cosh(s * x) + b * std::atan(cx)) / alpha;
  return (a * log_sinh(s * x) + b * std::log(std::tanh(0.5 * s * x))) / alpha;
}

// Antiderivative of z(x) along the non-sinusoidal branch.
double non_sinusoidal_log_integral(const NonSinusoidalModel& m, double x) {
  const auto& ns = std::get<NonSinusoidal>(m.form.variant);
  switch (ns.branch) {
  case Branch::Tanh: return log_cosh(std::sqrt(ns.lambda) * x);
  case Branch::Coth: return log_sinh(std::sqrt(ns.lambda) * x);
  case Branch::Inverse: return std::log(x);
  case Branch::Cot: return std::log(std::sin(std::sqrt(-ns.lambda) * x));
  }
  return 0.0;
}

void check_x(const ModelSpec& model, double x) {
  if (!model.form().x_domain.contains(x)) {
    std::ostringstream os;
    os << "x = " << x << " outside the model domain";
    throw DomainViolation(os.str());
  }
}

} // namespace

CoordinateValue model_coordinate(const ModelSpec& model, double x) {
  const CanonicalForm& form = model.form();
  CoordinateValue c = coordinate_closed_form(form, x);
  if (!form.sinusoidal()) return c;
  return {c.z / form.scale - form.shift, c.zprime / form.scale, c.zsecond / form.scale};
}

double w0(const ModelSpec& model, int level, double x) {
  check_x(model, x);
  if (const auto* s = std::get_if<SinusoidalModel>(&model.family)) return sinusoidal_w0(*s, x);
  const auto& n = std::get<NonSinusoidalModel>(model.family);
  const double k = n.A + level;
  return -k * non_sinusoidal_log_integral(n, x) + n.B / k * x;
}

double w0_prime(const ModelSpec& model, int level, double x) {
  if (const auto* s = std::get_if<SinusoidalModel>(&model.family)) {
    const auto [a, b] = s->canonical();
    const CoordinateValue c = coordinate_closed_form(s->form, x);
    return (a * c.z + b) / c.zprime;
  }
  const auto& n = std::get<NonSinusoidalModel>(model.family);
  const double k = n.A + level;
  return -k * coordinate_closed_form(n.form, x).z + n.B / k;
}

double w0_second(const ModelSpec& model, int level, double x) {
  if (const auto* s = std::get_if<SinusoidalModel>(&model.family)) {
    const auto [a, b] = s->canonical();
    const CoordinateValue c = coordinate_closed_form(s->form, x);
    return a - (a * c.z + b) * c.zsecond / (c.zprime * c.zprime);
  }
  const auto& n = std::get<NonSinusoidalModel>(model.family);
  return -(n.A + level) * coordinate_closed_form(n.form, x).zprime;
}

double potential_v0(const ModelSpec& model, double x) {
  if (const auto* n = std::get_if<NonSinusoidalModel>(&model.family)) {
    const double z = coordinate_closed_form(n->form, x).z;
    return n->A * (n->A - 1.0) * z * z - 2.0 * n->B * z;
  }
  return factorized_potential(model, x);
}

double factorized_potential(const ModelSpec& model, double x) {
  const double wp = w0_prime(model, 0, x);
  return wp * wp - w0_second(model, 0, x);
}

double energy(const ModelSpec& model, int N) {
  require_level(model, N);
  const double n = N;
  if (const auto* s = std::get_if<SinusoidalModel>(&model.family)) return 2.0 * s->a * n - s->q.alpha * n * n;
  const auto& m = std::get<NonSinusoidalModel>(model.family);
  const double k = m.A + n;
  return -m.B * m.B / (k * k) - m.lambda * (m.A * (2.0 * n + 1.0) + n * n);
}

namespace {

double order_n_raw(const ModelSpec& model, std::span<const double> roots, double x) {
  const int level = static_cast<int>(roots.size());
  const CoordinateValue c = model_coordinate(model, x);
  double wp = w0_prime(model, level, x);
  double wpp = w0_second(model, level, x);
  for (double zk : roots) {
    const double d = c.z - zk;
    wp -= c.zprime / d;
    wpp -= c.zsecond / d - c.zprime * c.zprime / (d * d);
  }
  return wp * wp - wpp;
}

} // namespace

double order_n_potential(const ModelSpec& model, std::span<const double> roots, double x) {
  // The poles at z = z_k cancel; close to a root the terms are evaluated on
  // a symmetric stencil and extrapolated back to x.
  const double delta = 1e-3 * model.form().natural_length();
  const CoordinateValue c = model_coordinate(model, x);
  bool near_root = false;
  for (double zk : roots) near_root = near_root || std::abs(c.z - zk) < std::abs(c.zprime) * delta;
  if (!near_root) return order_n_raw(model, roots, x);
  const double h = 2.0 * delta;
  const double f1 = order_n_raw(model, roots, x - h) + order_n_raw(model, roots, x + h);
  const double f2 = order_n_raw(model, roots, x - 2.0 * h) + order_n_raw(model, roots, x + 2.0 * h);
  return (4.0 * f1 - f2) / 6.0;
}

double log_abs_eigenfunction(const ModelSpec& model, int N, std::span<const double> roots, double x, int& sign) {
  double log_value = -w0(model, N, x);
  sign = 1;
  const double z = model_coordinate(model, x).z;
  for (double zk : roots) {
    const double d = z - zk;
    if (d < 0.0) sign = -sign;
    log_value += std::log(std::abs(d));
  }
  return log_value;
}

Eigenpair eigenfunction(const ModelSpec& model, const BaeSolution& solution, std::span<const double> x_grid) {
  const int N = solution.N;
  if (static_cast<int>(solution.roots.size()) != N)
    throw InvalidRoots("solution carries " + std::to_string(solution.roots.size()) + " roots for level " +
                       std::to_string(N));
  Eigenpair out;
  out.N = N;
  out.energy = energy(model, N);
  out.roots = solution.roots;
  const double residual = pole_cancellation_check(model, solution);
  if (!(residual <= 1e-8)) {
    std::ostringstream os;
    os << "roots do not satisfy the Bethe ansatz equations (residual " << residual << ")";
    throw InvalidRoots(os.str());
  }

  out.x.assign(x_grid.begin(), x_grid.end());
  out.values.resize(x_grid.size());
  std::vector<int> signs(x_grid.size());
  double log_max = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < x_grid.size(); ++i) {
    out.values[i] = log_abs_eigenfunction(model, N, solution.roots, x_grid[i], signs[i]);
    log_max = std::max(log_max, out.values[i]);
  }
  for (std::size_t i = 0; i < x_grid.size(); ++i) out.values[i] = signs[i] * std::exp(out.values[i] - log_max);
  return out;
}

double pole_cancellation_check(const ModelSpec& model, const BaeSolution& solution) {
  double worst = 0.0;
  for (double r : bae_residual(model, solution.roots)) worst = std::max(worst, std::abs(r));
  return worst;
}

Interval truncated_domain(const PotentialFn& v, const Interval& domain, double energy, double length, double decay) {
  const double probe_reach = 40.0 * length;
  const double lo = domain.bounded_below() ? domain.lo : -probe_reach;
  const double hi = domain.bounded_above() ? domain.hi : (domain.bounded_below() ? domain.lo + probe_reach : probe_reach);
  constexpr int probe_points = 4001;
  double best_x = 0.5 * (lo + hi);
  double best_v = std::numeric_limits<double>::infinity();
  for (int i = 1; i < probe_points - 1; ++i) {
    const double x = lo + (hi - lo) * i / (probe_points - 1);
    const double vx = v(x);
    if (std::isfinite(vx) && vx < best_v) {
      best_v = vx;
      best_x = x;
    }
  }
  if (!(best_v <= energy)) {
    std::ostringstream os;
    os << "energy " << energy << " lies below the potential minimum " << best_v;
    throw InputError(os.str());
  }

  auto march = [&](double direction) {
    double x = best_x;
    double action = 0.0;
    while (action < decay) {
      const double dx = 1e-3 * (length + std::abs(x - best_x));
      x += direction * dx;
      if (std::abs(x - best_x) > 1e5 * length)
        throw NumericalError("bound state does not decay within the search range");
      action += std::sqrt(std::max(v(x) - energy, 0.0)) * dx;
    }
    return x;
  };

  return {domain.bounded_below() ? domain.lo : march(-1.0), domain.bounded_above() ? domain.hi : march(1.0)};
}

Interval truncated_domain(const ModelSpec& model, double energy, double decay) {
  return truncated_domain([&](double x) { return potential_v0(model, x); }, model.form().x_domain, energy,
                          model.form().natural_length(), decay);
}

Interval classical_region(const ModelSpec& model, double e) {
  const Interval window = truncated_domain(model, e);
  constexpr int samples = 8001;
  double first = std::numeric_limits<double>::quiet_NaN();
  double last = first;
  for (int i = 1; i < samples - 1; ++i) {
    const double x = window.lo + (window.hi - window.lo) * i / (samples - 1);
    if (potential_v0(model, x) <= e) {
      if (std::isnan(first)) first = x;
      last = x;
    }
  }
  if (std::isnan(first)) throw InputError("no classically allowed region at this energy");
  const double step = (window.hi - window.lo) / (samples - 1);
  return {std::max(window.lo, first - step), std::min(window.hi, last + step)};
}

bool has_singular_wall(const ModelSpec& model) {
  const Interval& d = model.form().x_domain;
  const double eps = 1e-6 * model.form().natural_length();
  if (d.bounded_below() && std::abs(potential_v0(model, d.lo + eps)) > 1e4) return true;
  if (d.bounded_above() && std::abs(potential_v0(model, d.hi - eps)) > 1e4) return true;
  return false;
}

} // namespace prepot
