#pragma once

#include "prepot/coords.hpp"

#include <optional>
#include <string>
#include <variant>

namespace prepot {

// Parameters of the first-degree polynomial W0' z' = a z + b, expressed
// either in the user's z or in the canonical coordinate.
struct SinusoidalParams {
  double a;
  double b;
};

// Parameters of W0' = -A z + B / A for the non-sinusoidal family.
struct NonSinusoidalParams {
  double A;
  double B;
};

using ParameterSet = std::variant<SinusoidalParams, NonSinusoidalParams>;

struct SinusoidalModel {
  double a;
  double b;
  QuadraticQ q;
  CanonicalForm form;

  // W0' = P(z)/sqrt(Q(z)) is unchanged by z -> scale (z + shift) when P is
  // rescaled accordingly; these are the coefficients after that rescaling.
  SinusoidalParams canonical() const { return {a, form.scale * (b - a * form.shift)}; }
};

struct NonSinusoidalModel {
  double A;
  double B;
  double lambda;
  CanonicalForm form;
};

struct ModelSpec {
  std::variant<SinusoidalModel, NonSinusoidalModel> family;
  std::string name;
  // Highest admissible level; nullopt when every level is bound.
  std::optional<int> max_bound_level;

  bool sinusoidal() const { return std::holds_alternative<SinusoidalModel>(family); }
  const CanonicalForm& form() const;
  ParameterSet parameters() const;
  bool admits_level(int n) const { return n >= 0 && (!max_bound_level || n <= *max_bound_level); }
};

// e^{-W0} normalizable (and vanishing at finite walls) for the given
// canonical parameters.
bool ground_state_normalizable(const CanonicalForm& form, const SinusoidalParams& canonical);
bool ground_state_normalizable(const CanonicalForm& form, const NonSinusoidalParams& p);

// Both constructors throw ParameterWindowExceeded when the ground state is
// not normalizable, and UnviableCoordinate for a bad coordinate.
ModelSpec make_sinusoidal_model(double a, double b, const QuadraticQ& q, std::string name = {});
ModelSpec make_non_sinusoidal_model(double A, double B, double lambda, Branch branch, std::string name = {});

// Model with the same coordinate but different parameters; used for
// shape-invariant partners. Does not require a normalizable ground state.
ModelSpec with_parameters(const ModelSpec& model, const ParameterSet& params);

void require_level(const ModelSpec& model, int n);

std::string describe_window(const ModelSpec& model);

} // namespace prepot
