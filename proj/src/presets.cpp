#include "prepot/presets.hpp"

#include "prepot/errors.hpp"

#include <algorithm>

namespace prepot {

namespace {

std::vector<Preset> build_registry() {
  std::vector<Preset> r;
  auto sin = [&r](const char* name, double a, double b, QuadraticQ q) {
    r.push_back({name, "sinusoidal", make_sinusoidal_model(a, b, q, name)});
  };
  auto non = [&r](const char* name, double A, double B, double lambda, Branch branch) {
    r.push_back({name, "non-sinusoidal", make_non_sinusoidal_model(A, B, lambda, branch, name)});
  };
  sin("shifted-oscillator", 1.0, 0.0, {0.0, 0.0, 1.0});
  sin("3d-oscillator", 1.0, -1.0, {0.0, 2.0, 0.0});
  sin("morse", 4.0, -2.0, {1.0, 0.0, 0.0});
  sin("scarf1", 3.0, 1.0, {-1.0, 0.0, 1.0});
  sin("scarf2", 3.0, 1.0, {1.0, 0.0, 1.0});
  sin("gen-poschl-teller", 3.0, -4.0, {1.0, 0.0, -1.0});
  non("coulomb", 1.0, 1.0, 0.0, Branch::Inverse);
  non("eckart", 2.0, 6.0, 1.0, Branch::Coth);
  non("rosen-morse1", 2.0, 1.0, -1.0, Branch::Cot);
  // On the tanh branch the ground state is cosh^A e^{Bx/A}; A must be negative.
  non("rosen-morse2", -3.0, 1.0, 1.0, Branch::Tanh);
  std::sort(r.begin(), r.end(), [](const Preset& p, const Preset& q) { return p.name < q.name; });
  return r;
}

} // namespace

const std::vector<Preset>& preset_registry() {
  static const std::vector<Preset> registry = build_registry();
  return registry;
}

const Preset& find_preset(const std::string& name) {
  for (const auto& p : preset_registry())
    if (p.name == name) return p;
  std::string known;
  for (const auto& p : preset_registry()) known += (known.empty() ? "" : ", ") + p.name;
  throw InputError("unknown model '" + name + "' (known: " + known + ")");
}

int default_n_max(const ModelSpec& model) {
  return model.max_bound_level ? std::min(5, *model.max_bound_level) : 5;
}

} // namespace prepot
