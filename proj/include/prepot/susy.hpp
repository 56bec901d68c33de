#pragma once

#include "prepot/model.hpp"
#include "prepot/rational.hpp"

#include <array>
#include <span>
#include <string>
#include <vector>

namespace prepot {

enum class FamilyCase { CaseI, CaseII, CaseIII, NonSinusoidal };

std::string family_case_name(FamilyCase c);
FamilyCase family_case(const ModelSpec& model);

// Shape-invariance map lambda0 -> lambda1 with shift constant R(lambda0).
struct SiMap {
  ParameterSet lambda0;
  ParameterSet lambda1;
  double R = 0.0;
  FamilyCase family_case = FamilyCase::CaseI;
};

// V1 = W0'^2 + W0'' built from the level-0 prepotential.
double partner_potential(const ModelSpec& model, double x);

// Sign-preserving translation of the parameters. Throws
// ParameterWindowExceeded when the partner ground state is not normalizable.
SiMap si_parameter_map(const ModelSpec& model);
// Same map without the window check.
SiMap si_parameter_map_unchecked(const ModelSpec& model);

// True when no parameter changes sign between the two sets.
bool sign_preserving(const ParameterSet& from, const ParameterSet& to);

// max |V1(x; lambda0) - V0(x; lambda1) - R| over the grid.
double si_residual_numeric(const ModelSpec& model, std::span<const double> grid);
double si_residual_numeric(const ModelSpec& model, const SiMap& map, std::span<const double> grid);

// Level-n energy above the ground state as a sum of shift constants.
double spectrum_via_si(const ModelSpec& model, int n);

// psi' + W0' psi with centered differences on a uniform grid.
std::vector<double> apply_lowering(const ModelSpec& model, std::span<const double> x, std::span<const double> psi);

// ---- exact arithmetic ----

struct ExactQ {
  ExactRational alpha;
  ExactRational beta;
  ExactRational gamma;
};

struct ExactSinusoidalParams {
  ExactRational a;
  ExactRational b;
};

struct ExactNonSinusoidalParams {
  ExactRational A;
  ExactRational B;
};

// z' = alpha (lambda - z^2) coordinate for the non-sinusoidal identity.
struct ExactNonSinusoidalCoordinate {
  ExactRational lambda;
  ExactRational alpha;
};

// Coefficients (z^2, z^1, z^0) of the shape-invariance identity after
// clearing the common factor Q; all zero iff the identity holds.
using IdentityCoefficients = std::array<ExactRational, 3>;

struct ExactSinusoidalMap {
  ExactSinusoidalParams lambda1;
  ExactRational R;
};

struct ExactNonSinusoidalMap {
  ExactNonSinusoidalParams lambda1;
  ExactRational R;
};

ExactSinusoidalMap exact_si_map(const ExactQ& q, const ExactSinusoidalParams& p0);
ExactNonSinusoidalMap exact_si_map(const ExactNonSinusoidalCoordinate& c, const ExactNonSinusoidalParams& p0);

IdentityCoefficients si_identity(const ExactQ& q, const ExactSinusoidalParams& p0, const ExactSinusoidalParams& p1,
                                 const ExactRational& R);
IdentityCoefficients si_identity(const ExactNonSinusoidalCoordinate& c, const ExactNonSinusoidalParams& p0,
                                 const ExactNonSinusoidalParams& p1, const ExactRational& R);

// The R that balances the identity for an arbitrary candidate lambda1,
// read off the highest power of z present in Q. Used to inspect the
// branches the sign rule rejects.
ExactRational shift_constant_for(const ExactQ& q, const ExactSinusoidalParams& p0, const ExactSinusoidalParams& p1);

IdentityCoefficients si_residual_exact(const ExactQ& q, const ExactSinusoidalParams& p0);
IdentityCoefficients si_residual_exact(const ExactNonSinusoidalCoordinate& c, const ExactNonSinusoidalParams& p0);

} // namespace prepot
