#include "prepot/coords.hpp"

#include "prepot/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace prepot {

namespace {

constexpr double inf = std::numeric_limits<double>::infinity();

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};

std::string describe(const QuadraticQ& q) {
  std::ostringstream os;
  os << "(alpha, beta, gamma) = (" << q.alpha << ", " << q.beta << ", " << q.gamma << ")";
  return os.str();
}

Interval quad_domain(double alpha, int delta) {
  if (alpha < 0.0) {
    const double half = 0.5 * std::numbers::pi / std::sqrt(-alpha);
    return {-half, half};
  }
  if (delta == -1) return {0.0, inf};
  return {-inf, inf};
}

} // namespace

bool Interval::bounded_below() const { return std::isfinite(lo); }
bool Interval::bounded_above() const { return std::isfinite(hi); }

QuadraticQ CanonicalForm::canonical_q() const {
  return std::visit(overloaded{
                        [](const ConstQ& c) { return QuadraticQ{0.0, 0.0, c.gamma}; },
                        [](const LinearQ& l) { return QuadraticQ{0.0, l.beta, 0.0}; },
                        [](const QuadQ& q) { return QuadraticQ{q.alpha, 0.0, q.alpha * q.delta}; },
                        [](const NonSinusoidal&) { return QuadraticQ{}; },
                    },
                    variant);
}

double CanonicalForm::natural_length() const {
  return std::visit(overloaded{
                        [](const ConstQ&) { return 1.0; },
                        [](const LinearQ&) { return 1.0; },
                        [](const QuadQ& q) { return 1.0 / std::sqrt(std::abs(q.alpha)); },
                        [](const NonSinusoidal& n) {
                          return n.lambda == 0.0 ? 1.0 : 1.0 / std::sqrt(std::abs(n.lambda));
                        },
                    },
                    variant);
}

std::string branch_name(Branch branch) {
  switch (branch) {
  case Branch::Tanh: return "tanh";
  case Branch::Coth: return "coth";
  case Branch::Inverse: return "inverse";
  case Branch::Cot: return "cot";
  }
  return "?";
}

std::string case_name(const CanonicalForm& form) {
  return std::visit(overloaded{
                        [](const ConstQ&) -> std::string { return "CaseI"; },
                        [](const LinearQ&) -> std::string { return "CaseII"; },
                        [](const QuadQ&) -> std::string { return "CaseIII"; },
                        [](const NonSinusoidal&) -> std::string { return "NonSinusoidal"; },
                    },
                    form.variant);
}

CanonicalForm classify(const QuadraticQ& q) {
  if (q.alpha == 0.0 && q.beta == 0.0 && q.gamma == 0.0)
    throw UnviableCoordinate("degenerate Q: all coefficients vanish");

  if (q.alpha == 0.0 && q.beta == 0.0) {
    if (q.gamma <= 0.0)
      throw UnviableCoordinate("constant Q requires gamma > 0 (gamma <= 0 gives no physical coordinate): " +
                               describe(q));
    return {ConstQ{q.gamma}, 0.0, 1.0, {-inf, inf}};
  }

  if (q.alpha == 0.0) {
    if (q.beta < 0.0)
      throw UnviableCoordinate("linear Q requires beta > 0: " + describe(q));
    return {LinearQ{q.beta}, q.gamma / q.beta, 1.0, {0.0, inf}};
  }

  const double shift = q.beta / (2.0 * q.alpha);
  const double disc = q.discriminant();
  if (disc == 0.0) {
    if (q.alpha < 0.0)
      throw UnviableCoordinate("exponential case requires alpha > 0: " + describe(q));
    return {QuadQ{q.alpha, 0}, shift, 1.0, quad_domain(q.alpha, 0)};
  }

  const double scale = std::sqrt(4.0 * q.alpha * q.alpha / std::abs(disc));
  if (q.alpha > 0.0) {
    const int delta = disc > 0.0 ? 1 : -1;
    return {QuadQ{q.alpha, delta}, shift, scale, quad_domain(q.alpha, delta)};
  }
  if (disc > 0.0)
    throw UnviableCoordinate("trigonometric case with positive discriminant gives an imaginary coordinate: " +
                             describe(q));
  return {QuadQ{q.alpha, -1}, shift, scale, quad_domain(q.alpha, -1)};
}

Branch default_branch(double lambda) {
  if (lambda > 0.0) return Branch::Tanh;
  if (lambda == 0.0) return Branch::Inverse;
  return Branch::Cot;
}

CanonicalForm make_non_sinusoidal(double lambda, Branch branch) {
  const bool ok = (lambda > 0.0 && (branch == Branch::Tanh || branch == Branch::Coth)) ||
                  (lambda == 0.0 && branch == Branch::Inverse) ||
                  (lambda < 0.0 && branch == Branch::Cot);
  if (!ok)
    throw UnviableCoordinate("branch " + branch_name(branch) + " does not solve z' = lambda - z^2 for lambda = " +
                             std::to_string(lambda));
  Interval domain{0.0, inf};
  if (branch == Branch::Tanh) domain = {-inf, inf};
  if (branch == Branch::Cot) domain = {0.0, std::numbers::pi / std::sqrt(-lambda)};
  return {NonSinusoidal{lambda, branch}, 0.0, 1.0, domain};
}

CoordinateValue coordinate_closed_form(const CanonicalForm& form, double x) {
  if (!form.x_domain.contains(x)) {
    std::ostringstream os;
    os << "x = " << x << " outside coordinate domain (" << form.x_domain.lo << ", " << form.x_domain.hi << ")";
    throw DomainViolation(os.str());
  }
  return std::visit(
      overloaded{
          [x](const ConstQ& c) {
            const double s = std::sqrt(c.gamma);
            return CoordinateValue{s * x, s, 0.0};
          },
          [x](const LinearQ& l) { return CoordinateValue{0.25 * l.beta * x * x, 0.5 * l.beta * x, 0.5 * l.beta}; },
          [x](const QuadQ& q) {
            const double s = std::sqrt(std::abs(q.alpha));
            if (q.alpha < 0.0) {
              const double z = std::sin(s * x);
              return CoordinateValue{z, s * std::cos(s * x), q.alpha * z};
            }
            if (q.delta == 0) {
              const double z = std::exp(s * x);
              return CoordinateValue{z, s * z, q.alpha * z};
            }
            if (q.delta == 1) {
              const double z = std::sinh(s * x);
              return CoordinateValue{z, s * std::cosh(s * x), q.alpha * z};
            }
            const double z = std::cosh(s * x);
            return CoordinateValue{z, s * std::sinh(s * x), q.alpha * z};
          },
          [x](const NonSinusoidal& n) {
            double z = 0.0;
            switch (n.branch) {
            case Branch::Tanh: {
              const double r = std::sqrt(n.lambda);
              z = r * std::tanh(r * x);
              break;
            }
            case Branch::Coth: {
              const double r = std::sqrt(n.lambda);
              z = r / std::tanh(r * x);
              break;
            }
            case Branch::Inverse: z = 1.0 / x; break;
            case Branch::Cot: {
              const double r = std::sqrt(-n.lambda);
              z = r / std::tan(r * x);
              break;
            }
            }
            const double zp = n.lambda - z * z;
            return CoordinateValue{z, zp, -2.0 * z * zp};
          },
      },
      form.variant);
}

namespace {

double ode_rhs(const CanonicalForm& form, double z) {
  if (const auto* n = std::get_if<NonSinusoidal>(&form.variant)) return n->lambda - z * z;
  double q = form.canonical_q()(z);
  if (q < 0.0) {
    if (q < -1e-10 * (1.0 + z * z)) throw IntegrationDiverged("z left the region where Q(z) >= 0");
    q = 0.0;
  }
  return std::sqrt(q);
}

double rk4_advance(const CanonicalForm& form, double z, double from, double to, double max_step) {
  const double span = to - from;
  const auto steps = static_cast<long>(std::ceil(std::abs(span) / max_step));
  if (steps == 0) return z;
  const double h = span / static_cast<double>(steps);
  for (long i = 0; i < steps; ++i) {
    const double k1 = ode_rhs(form, z);
    const double k2 = ode_rhs(form, z + 0.5 * h * k1);
    const double k3 = ode_rhs(form, z + 0.5 * h * k2);
    const double k4 = ode_rhs(form, z + h * k3);
    z += h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    if (!std::isfinite(z)) throw IntegrationDiverged("RK4 iterate became non-finite");
  }
  return z;
}

} // namespace

OdeCheck coordinate_ode_check(const CanonicalForm& form, std::span<const double> grid, double anchor_x,
                              double anchor_z) {
  if (grid.empty()) return {};
  if (!std::is_sorted(grid.begin(), grid.end()) ||
      std::adjacent_find(grid.begin(), grid.end()) != grid.end())
    throw DomainViolation("ODE check grid must be strictly increasing");
  for (double x : {grid.front(), grid.back(), anchor_x})
    if (!form.x_domain.contains(x)) throw DomainViolation("ODE check grid leaves the coordinate domain");

  const double max_step = (grid.back() - grid.front()) / 1e4;
  const std::size_t n = grid.size();
  OdeCheck out;
  out.grid.x_values.assign(grid.begin(), grid.end());
  out.grid.z_values.resize(n);
  out.grid.zprime_values.resize(n);

  const auto first_right = static_cast<std::size_t>(std::lower_bound(grid.begin(), grid.end(), anchor_x) - grid.begin());

  double x = anchor_x;
  double z = anchor_z;
  for (std::size_t i = first_right; i < n; ++i) {
    z = rk4_advance(form, z, x, grid[i], max_step);
    x = grid[i];
    out.grid.z_values[i] = z;
  }
  x = anchor_x;
  z = anchor_z;
  for (std::size_t i = first_right; i-- > 0;) {
    z = rk4_advance(form, z, x, grid[i], max_step);
    x = grid[i];
    out.grid.z_values[i] = z;
  }

  for (std::size_t i = 0; i < n; ++i) {
    out.grid.zprime_values[i] = ode_rhs(form, out.grid.z_values[i]);
    const double exact = coordinate_closed_form(form, grid[i]).z;
    out.max_deviation = std::max(out.max_deviation, std::abs(out.grid.z_values[i] - exact));
  }
  return out;
}

OdeCheck coordinate_ode_check(const CanonicalForm& form, std::span<const double> grid) {
  if (grid.empty()) return {};
  const double anchor = grid[grid.size() / 2];
  return coordinate_ode_check(form, grid, anchor, coordinate_closed_form(form, anchor).z);
}

} // namespace prepot
