#include "prepot/susy.hpp"

#include "prepot/errors.hpp"
#include "prepot/prepotential.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace prepot {

namespace {

int sign_of(double v) { return (v > 0.0) - (v < 0.0); }

bool same_sign(double u, double v) { return sign_of(u) == sign_of(v); }

IdentityCoefficients top_three(const RationalPoly& p) {
  if (p.degree() > 2) throw std::logic_error("shape-invariance identity exceeded degree two");
  return {p.coeff(2), p.coeff(1), p.coeff(0)};
}

RationalPoly q_poly(const ExactQ& q) { return RationalPoly{q.gamma, q.beta, q.alpha}; }

RationalPoly sinusoidal_lhs(const ExactQ& q, const ExactSinusoidalParams& p0, const ExactSinusoidalParams& p1) {
  const RationalPoly P0{p0.b, p0.a};
  const RationalPoly P1{p1.b, p1.a};
  const RationalPoly Q = q_poly(q);
  const RationalPoly sum = P0 + P1;
  return (P0 * P0 - P1 * P1) + Q * sum.derivative() - Q.derivative() * sum * ExactRational(1, 2);
}

} // namespace

std::string family_case_name(FamilyCase c) {
  switch (c) {
  case FamilyCase::CaseI: return "CaseI";
  case FamilyCase::CaseII: return "CaseII";
  case FamilyCase::CaseIII: return "CaseIII";
  case FamilyCase::NonSinusoidal: return "NonSinusoidal";
  }
  return "?";
}

FamilyCase family_case(const ModelSpec& model) {
  const auto& v = model.form().variant;
  if (std::holds_alternative<ConstQ>(v)) return FamilyCase::CaseI;
  if (std::holds_alternative<LinearQ>(v)) return FamilyCase::CaseII;
  if (std::holds_alternative<QuadQ>(v)) return FamilyCase::CaseIII;
  return FamilyCase::NonSinusoidal;
}

double partner_potential(const ModelSpec& model, double x) {
  const double wp = w0_prime(model, 0, x);
  return wp * wp + w0_second(model, 0, x);
}

SiMap si_parameter_map_unchecked(const ModelSpec& model) {
  SiMap map;
  map.lambda0 = model.parameters();
  map.family_case = family_case(model);
  if (const auto* s = std::get_if<SinusoidalModel>(&model.family)) {
    // In canonical coordinates these reduce to (a, b), (a, b - beta/2) and
    // (a - alpha, b) for the three coordinate classes.
    map.lambda1 = SinusoidalParams{s->a - s->q.alpha, s->b - 0.5 * s->q.beta};
    map.R = 2.0 * s->a - s->q.alpha;
    return map;
  }
  const auto& n = std::get<NonSinusoidalModel>(model.family);
  const double A1 = n.A + 1.0;
  map.lambda1 = NonSinusoidalParams{A1, n.B};
  map.R = n.B * n.B * (1.0 / (n.A * n.A) - 1.0 / (A1 * A1)) - n.lambda * (2.0 * n.A + 1.0);
  return map;
}

SiMap si_parameter_map(const ModelSpec& model) {
  SiMap map = si_parameter_map_unchecked(model);
  const ModelSpec partner = with_parameters(model, map.lambda1);
  if (!partner.admits_level(0) || !sign_preserving(map.lambda0, map.lambda1)) {
    std::ostringstream os;
    os << "shape-invariant partner of " << (model.name.empty() ? "model" : model.name)
       << " leaves the normalizable window";
    throw ParameterWindowExceeded(os.str());
  }
  return map;
}

bool sign_preserving(const ParameterSet& from, const ParameterSet& to) {
  if (const auto* s0 = std::get_if<SinusoidalParams>(&from)) {
    const auto& s1 = std::get<SinusoidalParams>(to);
    return same_sign(s0->a, s1.a) && same_sign(s0->b, s1.b);
  }
  const auto& n0 = std::get<NonSinusoidalParams>(from);
  const auto& n1 = std::get<NonSinusoidalParams>(to);
  return same_sign(n0.A, n1.A) && same_sign(n0.B, n1.B);
}

double si_residual_numeric(const ModelSpec& model, const SiMap& map, std::span<const double> grid) {
  const ModelSpec partner = with_parameters(model, map.lambda1);
  double worst = 0.0;
  for (double x : grid)
    worst = std::max(worst, std::abs(partner_potential(model, x) - factorized_potential(partner, x) - map.R));
  return worst;
}

double si_residual_numeric(const ModelSpec& model, std::span<const double> grid) {
  return si_residual_numeric(model, si_parameter_map_unchecked(model), grid);
}

double spectrum_via_si(const ModelSpec& model, int n) {
  if (n < 0) throw LevelOutOfRange("negative level");
  if (!model.admits_level(0)) throw ParameterWindowExceeded("ground state of the model is not normalizable");
  ModelSpec current = model;
  double total = 0.0;
  for (int k = 0; k < n; ++k) {
    const SiMap map = si_parameter_map_unchecked(current);
    current = with_parameters(current, map.lambda1);
    if (!current.admits_level(0) || !sign_preserving(map.lambda0, map.lambda1)) {
      std::ostringstream os;
      os << "parameter set lambda_" << (k + 1) << " leaves the normalizable window; spectrum of "
         << (model.name.empty() ? "model" : model.name) << " terminates at level " << k;
      throw ParameterWindowExceeded(os.str());
    }
    total += map.R;
  }
  return total;
}

std::vector<double> apply_lowering(const ModelSpec& model, std::span<const double> x, std::span<const double> psi) {
  const std::size_t n = x.size();
  if (n < 16) throw GridTooCoarse("lowering operator needs at least 16 grid points");
  if (psi.size() != n) throw InputError("grid and function sizes differ");
  const double h = (x[n - 1] - x[0]) / static_cast<double>(n - 1);
  for (std::size_t i = 1; i < n; ++i)
    if (std::abs(x[i] - x[i - 1] - h) > 1e-9 * std::abs(h)) throw InputError("lowering operator needs a uniform grid");

  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    double d;
    if (i == 0)
      d = (-3.0 * psi[0] + 4.0 * psi[1] - psi[2]) / (2.0 * h);
    else if (i == n - 1)
      d = (3.0 * psi[n - 1] - 4.0 * psi[n - 2] + psi[n - 3]) / (2.0 * h);
    else
      d = (psi[i + 1] - psi[i - 1]) / (2.0 * h);
    out[i] = d + w0_prime(model, 0, x[i]) * psi[i];
  }
  return out;
}

ExactSinusoidalMap exact_si_map(const ExactQ& q, const ExactSinusoidalParams& p0) {
  return {{p0.a - q.alpha, p0.b - q.beta / 2}, 2 * p0.a - q.alpha};
}

ExactNonSinusoidalMap exact_si_map(const ExactNonSinusoidalCoordinate& c, const ExactNonSinusoidalParams& p0) {
  const ExactRational A1 = p0.A + c.alpha;
  const ExactRational R =
      p0.B * p0.B / (p0.A * p0.A) - p0.B * p0.B / (A1 * A1) - c.alpha * c.lambda * (2 * p0.A + c.alpha);
  return {{A1, p0.B}, R};
}

IdentityCoefficients si_identity(const ExactQ& q, const ExactSinusoidalParams& p0, const ExactSinusoidalParams& p1,
                                 const ExactRational& R) {
  return top_three(sinusoidal_lhs(q, p0, p1) - q_poly(q) * R);
}

IdentityCoefficients si_identity(const ExactNonSinusoidalCoordinate& c, const ExactNonSinusoidalParams& p0,
                                 const ExactNonSinusoidalParams& p1, const ExactRational& R) {
  // W0' = -A z + B/A and W0'' = -A z' = -A alpha (lambda - z^2).
  auto w_prime = [](const ExactNonSinusoidalParams& p) { return RationalPoly{p.B / p.A, -p.A}; };
  auto w_second = [&c](const ExactNonSinusoidalParams& p) {
    const ExactRational k = p.A * c.alpha;
    return RationalPoly{-k * c.lambda, 0, k};
  };
  const RationalPoly w0 = w_prime(p0);
  const RationalPoly w1 = w_prime(p1);
  const RationalPoly lhs = w0 * w0 + w_second(p0) - (w1 * w1 - w_second(p1)) - RationalPoly{R};
  return top_three(lhs);
}

ExactRational shift_constant_for(const ExactQ& q, const ExactSinusoidalParams& p0, const ExactSinusoidalParams& p1) {
  const RationalPoly lhs = sinusoidal_lhs(q, p0, p1);
  const RationalPoly Q = q_poly(q);
  if (Q.is_zero()) throw InputError("Q vanishes identically");
  const auto k = static_cast<std::size_t>(Q.degree());
  return lhs.coeff(k) / Q.coeff(k);
}

IdentityCoefficients si_residual_exact(const ExactQ& q, const ExactSinusoidalParams& p0) {
  const ExactSinusoidalMap m = exact_si_map(q, p0);
  return si_identity(q, p0, m.lambda1, m.R);
}

IdentityCoefficients si_residual_exact(const ExactNonSinusoidalCoordinate& c, const ExactNonSinusoidalParams& p0) {
  const ExactNonSinusoidalMap m = exact_si_map(c, p0);
  return si_identity(c, p0, m.lambda1, m.R);
}

} // namespace prepot
