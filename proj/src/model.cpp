#include "prepot/model.hpp"

#include "prepot/errors.hpp"

#include <cmath>
#include <sstream>

namespace prepot {

namespace {

constexpr int level_search_cap = 1'000'000;

template <class Params, class Next>
std::optional<int> window_from(const CanonicalForm& form, Params p, Next next) {
  if (!ground_state_normalizable(form, p)) return -1;
  for (int n = 0; n < level_search_cap; ++n) {
    p = next(p);
    if (!ground_state_normalizable(form, p)) return n;
  }
  return std::nullopt;
}

std::optional<int> sinusoidal_window(const SinusoidalModel& m) {
  const QuadraticQ cq = m.form.canonical_q();
  return window_from(m.form, m.canonical(), [&](SinusoidalParams p) {
    return SinusoidalParams{p.a - cq.alpha, p.b - 0.5 * cq.beta};
  });
}

std::optional<int> non_sinusoidal_window(const NonSinusoidalModel& m) {
  return window_from(m.form, NonSinusoidalParams{m.A, m.B},
                     [](NonSinusoidalParams p) { return NonSinusoidalParams{p.A + 1.0, p.B}; });
}

} // namespace

const CanonicalForm& ModelSpec::form() const {
  if (const auto* s = std::get_if<SinusoidalModel>(&family)) return s->form;
  return std::get<NonSinusoidalModel>(family).form;
}

ParameterSet ModelSpec::parameters() const {
  if (const auto* s = std::get_if<SinusoidalModel>(&family)) return SinusoidalParams{s->a, s->b};
  const auto& n = std::get<NonSinusoidalModel>(family);
  return NonSinusoidalParams{n.A, n.B};
}

bool ground_state_normalizable(const CanonicalForm& form, const SinusoidalParams& p) {
  if (const auto* q = std::get_if<QuadQ>(&form.variant)) {
    if (q->alpha < 0.0) return p.a > std::abs(p.b);
    if (q->delta == 0) return p.a > 0.0 && p.b < 0.0;
    if (q->delta == 1) return p.a > 0.0;
    return p.a > 0.0 && p.a + p.b < 0.0;
  }
  if (std::holds_alternative<LinearQ>(form.variant)) return p.a > 0.0 && p.b < 0.0;
  return p.a > 0.0;
}

bool ground_state_normalizable(const CanonicalForm& form, const NonSinusoidalParams& p) {
  const auto& ns = std::get<NonSinusoidal>(form.variant);
  const double k = p.A;
  switch (ns.branch) {
  case Branch::Tanh: return k < 0.0 && std::abs(p.B) < k * k * std::sqrt(ns.lambda);
  case Branch::Coth: return k > 0.0 && p.B > k * k * std::sqrt(ns.lambda);
  case Branch::Inverse: return k > 0.0 && p.B > 0.0;
  case Branch::Cot: return k > 0.0;
  }
  return false;
}

ModelSpec make_sinusoidal_model(double a, double b, const QuadraticQ& q, std::string name) {
  SinusoidalModel m{a, b, q, classify(q)};
  auto window = sinusoidal_window(m);
  if (window && *window < 0) {
    std::ostringstream os;
    os << "ground state not normalizable for a = " << a << ", b = " << b << " in " << case_name(m.form);
    throw ParameterWindowExceeded(os.str());
  }
  return {m, std::move(name), window};
}

ModelSpec make_non_sinusoidal_model(double A, double B, double lambda, Branch branch, std::string name) {
  NonSinusoidalModel m{A, B, lambda, make_non_sinusoidal(lambda, branch)};
  auto window = non_sinusoidal_window(m);
  if (window && *window < 0) {
    std::ostringstream os;
    os << "ground state not normalizable for A = " << A << ", B = " << B << " on the " << branch_name(branch)
       << " branch";
    throw ParameterWindowExceeded(os.str());
  }
  return {m, std::move(name), window};
}

ModelSpec with_parameters(const ModelSpec& model, const ParameterSet& params) {
  ModelSpec out = model;
  if (auto* s = std::get_if<SinusoidalModel>(&out.family)) {
    const auto& p = std::get<SinusoidalParams>(params);
    s->a = p.a;
    s->b = p.b;
    out.max_bound_level = sinusoidal_window(*s);
  } else {
    auto& n = std::get<NonSinusoidalModel>(out.family);
    const auto& p = std::get<NonSinusoidalParams>(params);
    n.A = p.A;
    n.B = p.B;
    out.max_bound_level = non_sinusoidal_window(n);
  }
  return out;
}

std::string describe_window(const ModelSpec& model) {
  if (!model.max_bound_level) return "0 <= N (unbounded)";
  if (*model.max_bound_level < 0) return "empty";
  return "0 <= N <= " + std::to_string(*model.max_bound_level);
}

void require_level(const ModelSpec& model, int n) {
  if (model.admits_level(n)) return;
  std::ostringstream os;
  os << "level N = " << n << " outside the bound-state window " << describe_window(model);
  if (!model.name.empty()) os << " of " << model.name;
  throw LevelOutOfRange(os.str());
}

} // namespace prepot
