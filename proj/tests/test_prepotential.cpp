#include "prepot/errors.hpp"
#include "prepot/presets.hpp"
#include "prepot/prepotential.hpp"
#include "prepot/verify.hpp"

#include <doctest.h>

#include <cmath>
#include <vector>

using namespace prepot;

namespace {

const ModelSpec& preset(const char* name) { return find_preset(name).model; }

std::vector<double> sample(const ModelSpec& m, double energy_level, int n = 61) {
  const Interval w = truncated_domain(m, energy_level);
  const double margin = 0.02 * (w.hi - w.lo);
  std::vector<double> x;
  for (int i = 0; i < n; ++i) x.push_back(w.lo + margin + (w.hi - w.lo - 2 * margin) * i / (n - 1));
  return x;
}

} // namespace

TEST_CASE("w0_prime examples") {
  CHECK(w0_prime(preset("shifted-oscillator"), 0, 1.5) == doctest::Approx(1.5));
  CHECK(w0_prime(preset("coulomb"), 0, 2.0) == doctest::Approx(0.5));
  const ModelSpec morse = make_sinusoidal_model(2, -1, {1, 0, 0});
  CHECK(w0_prime(morse, 0, 0.0) == doctest::Approx(1.0));
}

TEST_CASE("w0 derivatives are consistent") {
  for (const auto& p : preset_registry()) {
    const ModelSpec& m = p.model;
    for (double x : sample(m, energy(m, 0), 21)) {
      const double h = 1e-5 * m.form().natural_length();
      const double d1 = (w0(m, 0, x + h) - w0(m, 0, x - h)) / (2 * h);
      const double d2 = (w0_prime(m, 0, x + h) - w0_prime(m, 0, x - h)) / (2 * h);
      CHECK(d1 == doctest::Approx(w0_prime(m, 0, x)).epsilon(1e-6));
      CHECK(d2 == doctest::Approx(w0_second(m, 0, x)).epsilon(1e-5));
    }
  }
}

TEST_CASE("potential examples") {
  CHECK(potential_v0(preset("shifted-oscillator"), 2.0) == doctest::Approx(3.0));
  CHECK(potential_v0(preset("coulomb"), 2.0) == doctest::Approx(-1.0));
  const ModelSpec sym = make_non_sinusoidal_model(-2, 0, 1, Branch::Tanh);
  CHECK(potential_v0(sym, 0.0) == doctest::Approx(0.0));
  const ModelSpec& o = preset("3d-oscillator");
  for (double x : {0.5, 1.0, 3.0}) CHECK(potential_v0(o, x) == doctest::Approx(x * x / 4 - 1.5));
}

TEST_CASE("factorized potential sits at the ground state") {
  for (const auto& p : preset_registry())
    for (double x : sample(p.model, energy(p.model, 0), 11))
      CHECK(factorized_potential(p.model, x) ==
            doctest::Approx(potential_v0(p.model, x) - energy(p.model, 0)).epsilon(1e-10).scale(1.0));
}

TEST_CASE("energy examples") {
  CHECK(energy(preset("shifted-oscillator"), 3) == doctest::Approx(6.0));
  CHECK(energy(preset("coulomb"), 0) == doctest::Approx(-1.0));
  CHECK(energy(preset("coulomb"), 1) == doctest::Approx(-0.25));
  CHECK(energy(preset("coulomb"), 2) == doctest::Approx(-1.0 / 9));
  CHECK(energy(preset("morse"), 2) == doctest::Approx(12.0));
  CHECK(energy(preset("eckart"), 0) == doctest::Approx(-11.0));
  CHECK_THROWS_AS(energy(preset("morse"), 4), LevelOutOfRange);
  CHECK_THROWS_AS(energy(preset("morse"), -1), LevelOutOfRange);
}

TEST_CASE("energies increase inside every window") {
  for (const auto& p : preset_registry()) {
    const int top = p.model.max_bound_level.value_or(8);
    for (int n = 0; n < top; ++n) CHECK(energy(p.model, n + 1) > energy(p.model, n));
  }
}

TEST_CASE("bound windows of the presets") {
  CHECK(preset("morse").max_bound_level == 3);
  CHECK(preset("scarf2").max_bound_level == 2);
  CHECK(preset("gen-poschl-teller").max_bound_level == 2);
  CHECK(preset("eckart").max_bound_level == 0);
  CHECK(preset("rosen-morse2").max_bound_level == 1);
  CHECK_FALSE(preset("coulomb").max_bound_level.has_value());
  CHECK_FALSE(preset("scarf1").max_bound_level.has_value());
  CHECK_FALSE(preset("rosen-morse1").max_bound_level.has_value());
}

TEST_CASE("non-normalizable parameters are rejected") {
  CHECK_THROWS_AS(make_sinusoidal_model(-1, 0, {0, 0, 1}), ParameterWindowExceeded);
  CHECK_THROWS_AS(make_sinusoidal_model(1, 1, {0, 2, 0}), ParameterWindowExceeded);
  CHECK_THROWS_AS(make_non_sinusoidal_model(3, 1, 1, Branch::Tanh), ParameterWindowExceeded);
  CHECK_THROWS_AS(make_non_sinusoidal_model(-1, 1, 0, Branch::Inverse), ParameterWindowExceeded);
}

TEST_CASE("eigenfunction of level zero is exp(-W0)") {
  for (const auto& p : preset_registry()) {
    const auto x = sample(p.model, energy(p.model, 0), 21);
    const Eigenpair e = eigenfunction(p.model, BaeSolution{}, x);
    CHECK(e.N == 0);
    CHECK(e.roots.empty());
    double ref = -1e300;
    for (double xi : x) ref = std::max(ref, -w0(p.model, 0, xi));
    for (std::size_t i = 0; i < x.size(); ++i)
      CHECK(e.values[i] == doctest::Approx(std::exp(-w0(p.model, 0, x[i]) - ref)).epsilon(1e-9));
  }
}

TEST_CASE("shifted oscillator level two matches Hermite") {
  const ModelSpec& m = preset("shifted-oscillator");
  BaeSolution s;
  s.N = 2;
  s.roots = {-1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
  std::vector<double> x{-2, -1, -0.3, 0, 0.7, 1.5, 2.5};
  const Eigenpair e = eigenfunction(m, s, x);
  // Ratio to e^{-x^2/2}(x^2 - 1/2) must be constant.
  const double c = e.values[0] / (std::exp(-2.0) * (4 - 0.5));
  for (std::size_t i = 0; i < x.size(); ++i)
    CHECK(e.values[i] == doctest::Approx(c * std::exp(-x[i] * x[i] / 2) * (x[i] * x[i] - 0.5)).epsilon(1e-12));
  CHECK(e.energy == doctest::Approx(4.0));
}

TEST_CASE("coulomb level one solves the Schrodinger equation") {
  const ModelSpec& m = preset("coulomb");
  BaeSolution s;
  s.N = 1;
  s.roots = {0.5};
  GridSpec g{0.01, 40, 4000};
  const Eigenpair e = eigenfunction(m, s, g.nodes());
  CHECK(wavefunction_residual(m, e, g) <= 1e-4);
  // phi_1 = x^2 e^{-x/2} (1/x - 1/2) = x e^{-x/2} (1 - x/2)
  const double c = e.values[100] / (g.nodes()[100] * std::exp(-g.nodes()[100] / 2) * (1 - g.nodes()[100] / 2));
  for (int i : {10, 500, 1500, 3000})
    CHECK(e.values[i] ==
          doctest::Approx(c * g.nodes()[i] * std::exp(-g.nodes()[i] / 2) * (1 - g.nodes()[i] / 2)).epsilon(1e-9));
}

TEST_CASE("eigenfunction rejects bad roots") {
  const ModelSpec& m = preset("shifted-oscillator");
  BaeSolution s;
  s.N = 2;
  s.roots = {-0.7, 0.7};
  std::vector<double> x{0.0, 1.0};
  CHECK_THROWS_AS(eigenfunction(m, s, x), InvalidRoots);
  s.roots = {0.1};
  CHECK_THROWS_AS(eigenfunction(m, s, x), InvalidRoots);
}

TEST_CASE("pole cancellation") {
  const ModelSpec& m = preset("shifted-oscillator");
  CHECK(pole_cancellation_check(m, BaeSolution{}) == 0.0);
  BaeSolution s;
  s.N = 2;
  s.roots = {-1 / std::sqrt(2.0), 1 / std::sqrt(2.0)};
  CHECK(pole_cancellation_check(m, s) <= 1e-12);
  s.roots[1] += 1e-3;
  const double r = pole_cancellation_check(m, s);
  CHECK(r >= 1e-4);
  CHECK(r <= 1e-2);
}

TEST_CASE("order-N prepotential reproduces the potential") {
  for (const auto& p : preset_registry()) {
    const ModelSpec& m = p.model;
    const int top = std::min(4, default_n_max(m));
    const auto sols = continuation_sweep(m, top);
    for (const auto& s : sols) {
      const double en = energy(m, s.N);
      for (double x : sample(m, en, 31)) {
        const double v = potential_v0(m, x) - en;
        CHECK_MESSAGE(std::abs(order_n_potential(m, s.roots, x) - v) <= 1e-8 * std::max(1.0, std::abs(v)), p.name << " N=" << s.N << " x=" << x);
      }
    }
  }
}

TEST_CASE("non-sinusoidal potential is level independent") {
  for (const char* name : {"coulomb", "rosen-morse1", "rosen-morse2", "eckart"}) {
    const ModelSpec& m = preset(name);
    const auto sols = continuation_sweep(m, default_n_max(m));
    const auto x = sample(m, energy(m, 0), 41);
    std::vector<double> base;
    for (double xi : x) base.push_back(order_n_potential(m, {}, xi));
    for (const auto& s : sols) {
      std::vector<double> d;
      for (std::size_t i = 0; i < x.size(); ++i) d.push_back(order_n_potential(m, s.roots, x[i]) - base[i]);
      const double mean = [&] {
        double t = 0;
        for (double v : d) t += v;
        return t / d.size();
      }();
      for (double v : d) CHECK(std::abs(v - mean) <= 1e-9 * std::max(1.0, std::abs(mean)));
      CHECK(mean == doctest::Approx(energy(m, 0) - energy(m, s.N)));
    }
  }
}

TEST_CASE("node counts of the eigenfunctions") {
  for (const auto& p : preset_registry()) {
    const ModelSpec& m = p.model;
    std::vector<BaeSolution> sols{BaeSolution{}};
    for (auto& s : continuation_sweep(m, default_n_max(m))) sols.push_back(s);
    for (const auto& s : sols) {
      const Interval w = wavefunction_window(m, s.N, s.roots, wavefunction_drop);
      const GridSpec g{w.lo, w.hi, 4000};
      CHECK(sign_changes(eigenfunction(m, s, g.nodes()).values) == s.N);
    }
  }
}
