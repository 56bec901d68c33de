#pragma once

#include <span>
#include <string>
#include <variant>
#include <vector>

namespace prepot {

// Q(z) = alpha z^2 + beta z + gamma, the squared derivative of a sinusoidal
// coordinate expressed as a function of z.
struct QuadraticQ {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;

  double operator()(double z) const { return (alpha * z + beta) * z + gamma; }
  double derivative(double z) const { return 2.0 * alpha * z + beta; }
  double discriminant() const { return 4.0 * alpha * gamma - beta * beta; }
};

// Open interval; either end may be infinite.
struct Interval {
  double lo;
  double hi;

  bool contains(double x) const { return x > lo && x < hi; }
  bool bounded_below() const;
  bool bounded_above() const;
};

// z'^2 = gamma
struct ConstQ {
  double gamma;
};

// z'^2 = beta z
struct LinearQ {
  double beta;
};

// z'^2 = alpha (z^2 + delta)
struct QuadQ {
  double alpha;
  int delta;
};

// Solutions of z' = lambda - z^2. For lambda > 0 there are two real
// branches, one bounded (tanh) and one on a half line (coth).
enum class Branch { Tanh, Coth, Inverse, Cot };

struct NonSinusoidal {
  double lambda;
  Branch branch;
};

using CoordinateVariant = std::variant<ConstQ, LinearQ, QuadQ, NonSinusoidal>;

// A coordinate class together with the affine map z_hat = scale * (z + shift)
// that took the user's Q into canonical form.
struct CanonicalForm {
  CoordinateVariant variant;
  double shift = 0.0;
  double scale = 1.0;
  Interval x_domain{0.0, 0.0};

  bool sinusoidal() const { return !std::holds_alternative<NonSinusoidal>(variant); }
  // Q of the canonical coordinate; only meaningful for sinusoidal forms.
  QuadraticQ canonical_q() const;
  // 1/sqrt|alpha| or 1/sqrt|lambda|; 1 where the form has no scale.
  double natural_length() const;
};

std::string case_name(const CanonicalForm& form);
std::string branch_name(Branch branch);

CanonicalForm classify(const QuadraticQ& q);

// Throws UnviableCoordinate when the branch does not exist for the sign of lambda.
CanonicalForm make_non_sinusoidal(double lambda, Branch branch);
Branch default_branch(double lambda);

struct CoordinateValue {
  double z;
  double zprime;
  double zsecond;
};

// Canonical coordinate z(x) and its first two derivatives.
CoordinateValue coordinate_closed_form(const CanonicalForm& form, double x);

struct CoordinateGrid {
  std::vector<double> x_values;
  std::vector<double> z_values;
  std::vector<double> zprime_values;
};

struct OdeCheck {
  CoordinateGrid grid;
  double max_deviation = 0.0;
};

// Integrates the defining first-order ODE of the coordinate with fixed-step
// RK4 from an anchor and compares against the closed form on `grid`.
OdeCheck coordinate_ode_check(const CanonicalForm& form, std::span<const double> grid,
                              double anchor_x, double anchor_z);
// Anchors at the middle grid point using the closed-form value there.
OdeCheck coordinate_ode_check(const CanonicalForm& form, std::span<const double> grid);

} // namespace prepot
