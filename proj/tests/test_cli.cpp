#include "prepot/commands.hpp"
#include "prepot/coords.hpp"
#include "prepot/errors.hpp"
#include "prepot/presets.hpp"

#include <doctest.h>

#include <cmath>
#include <sstream>

using namespace prepot;

namespace {

struct Run {
  int code;
  std::string out;
  std::string err;
};

Run run(const std::string& cmd, RunConfig c) {
  std::ostringstream out, err;
  const int code = run_command(cmd, c, out, err);
  return {code, out.str(), err.str()};
}

RunConfig with_model(const std::string& model, std::optional<int> n = std::nullopt) {
  RunConfig c;
  c.model = model;
  c.n_max = n;
  return c;
}

std::vector<std::vector<std::string>> parse_csv(const std::string& text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::istringstream ls(line);
    std::string cell;
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    rows.push_back(cells);
  }
  return rows;
}

} // namespace

TEST_CASE("registry") {
  const auto& r = preset_registry();
  CHECK(r.size() == 10);
  for (const char* name : {"shifted-oscillator", "3d-oscillator", "morse", "scarf1", "scarf2", "gen-poschl-teller",
                           "coulomb", "eckart", "rosen-morse1", "rosen-morse2"})
    CHECK_NOTHROW(find_preset(name));
  CHECK_THROWS_AS(find_preset("hydrogen"), InputError);
}

TEST_CASE("list-models") {
  RunConfig c;
  const Run j = run("list-models", c);
  CHECK(j.code == 0);
  const Json parsed = Json::parse(j.out);
  CHECK(parsed["schema_version"] == 1);
  REQUIRE(parsed["models"].size() == 10);
  for (const auto& m : parsed["models"]) {
    const auto& model = find_preset(m["name"].get<std::string>()).model;
    if (model.sinusoidal()) {
      const auto& q = std::get<SinusoidalModel>(model.family).q;
      CHECK(m["case"].get<std::string>() == case_name(classify(q)));
    }
    for (const char* key : {"name", "family", "case", "coordinate", "parameters", "max_bound_level", "window"})
      CHECK(m.contains(key));
  }
  c.format = OutputFormat::Csv;
  const auto rows = parse_csv(run("list-models", c).out);
  CHECK(rows.size() == 11);
}

TEST_CASE("spectrum") {
  RunConfig c = with_model("coulomb", 3);
  c.format = OutputFormat::Csv;
  const Run r = run("spectrum", c);
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0] == std::vector<std::string>{"N", "E_closed_form", "E_via_SI", "diff"});
  const double expect[] = {-1, -0.25, -1.0 / 9, -0.0625};
  for (int n = 0; n < 4; ++n) {
    CHECK(std::stod(rows[n + 1][1]) == doctest::Approx(expect[n]));
    CHECK(std::stod(rows[n + 1][2]) == doctest::Approx(expect[n] + 1));
  }
  CHECK(parse_csv(run("spectrum", with_model("morse", 0)).out).size() > 0);
  c = with_model("morse", 0);
  c.format = OutputFormat::Csv;
  CHECK(parse_csv(run("spectrum", c).out).size() == 2);

  const Run bad = run("spectrum", with_model("morse", 7));
  CHECK(bad.code == 2);
  CHECK(bad.err.find("0 <= N <= 3") != std::string::npos);
}

TEST_CASE("verify exit codes") {
  RunConfig c = with_model("shifted-oscillator");
  CHECK(run("verify", c).code == 0);
  c = with_model("coulomb");
  c.grid_points = 64;
  const Run coarse = run("verify", c);
  CHECK(coarse.code == 1);
  CHECK(Json::parse(coarse.out)["passed"] == false);
  c.grid_points = 10;
  CHECK(run("verify", c).code == 2);
  CHECK(run("verify", with_model("nope")).code == 2);
  CHECK(run("frobnicate", RunConfig{}).code == 2);
  CHECK(run("spectrum", RunConfig{}).code == 2);
}

TEST_CASE("verify csv round trip") {
  RunConfig c = with_model("morse");
  c.format = OutputFormat::Csv;
  const auto rows = parse_csv(run("verify", c).out);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].size() == 13);
  c.format = OutputFormat::Json;
  const Json j = Json::parse(run("verify", c).out);
  const auto& levels = j["reports"][0]["levels"];
  for (std::size_t i = 0; i < levels.size(); ++i) {
    CHECK(rows[i + 1][0] == "morse");
    CHECK(std::stoi(rows[i + 1][1]) == levels[i]["N"].get<int>());
    CHECK(std::stod(rows[i + 1][3]) == levels[i]["E_fd"].get<double>());
    CHECK(std::stod(rows[i + 1][5]) == levels[i]["wave_residual"].get<double>());
  }
}

TEST_CASE("verify is deterministic and parallel-safe") {
  RunConfig c;
  c.model = "all";
  const Run a = run("verify", c);
  const Run b = run("verify", c);
  c.parallel = true;
  const Run p = run("verify", c);
  CHECK(a.out == b.out);
  CHECK(a.out == p.out);
  CHECK(a.code == p.code);
}

TEST_CASE("plot-data") {
  RunConfig c = with_model("shifted-oscillator", 3);
  c.format = OutputFormat::Csv;
  const Run r = run("plot-data", c);
  CHECK(r.code == 0);
  const auto rows = parse_csv(r.out);
  CHECK(rows[0] == std::vector<std::string>{"x", "V0", "V1", "phi_0", "phi_1", "phi_2", "phi_3"});
  for (int col = 3; col < 7; ++col) {
    int changes = 0;
    double last = 0;
    for (std::size_t i = 1; i < rows.size(); ++i) {
      const double x = std::stod(rows[i][0]);
      if (col == 3) {
        CHECK(std::abs(std::stod(rows[i][1]) - (x * x - 1)) <= 1e-12);
        CHECK(std::abs(std::stod(rows[i][2]) - (x * x + 1)) <= 1e-12);
      }
      const double v = std::stod(rows[i][col]);
      if (v != 0 && last != 0 && (v > 0) != (last > 0)) ++changes;
      if (v != 0) last = v;
    }
    CHECK(changes == col - 3);
  }
  CHECK(run("plot-data", c).out == r.out);
}

TEST_CASE("config parsing") {
  const RunConfig c = config_from_json(Json::parse(R"({"model": "morse", "nmax": 2, "format": "csv"})"));
  CHECK(c.model == "morse");
  CHECK(c.n_max == 2);
  CHECK(c.format == OutputFormat::Csv);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"model": "morse", "nmx": 2})")), InputError);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"format": "xml"})")), InputError);
  CHECK_THROWS_AS(load_config("/nonexistent/config.json"), InputError);

  const RunConfig inl = config_from_json(
      Json::parse(R"({"model": {"family": "sinusoidal", "a": 2, "b": -3, "beta": 4, "gamma": 8}, "nmax": 3})"));
  REQUIRE(inl.inline_model.has_value());
  const Run r = run("spectrum", inl);
  CHECK(r.code == 0);
  CHECK_THROWS_AS(config_from_json(Json::parse(R"({"model": {"family": "sinusoidal", "a": 1, "b": 0, "delta": 1}})")),
                  InputError);
  const RunConfig ns = config_from_json(
      Json::parse(R"({"model": {"family": "non-sinusoidal", "A": 2, "B": 1, "lambda": -1, "branch": "cot"}})"));
  CHECK(run("verify", ns).code == 0);
}
