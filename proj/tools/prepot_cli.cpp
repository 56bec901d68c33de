#include "prepot/commands.hpp"
#include "prepot/errors.hpp"

#include <CLI11.hpp>

#include <iostream>

int main(int argc, char** argv) {
  using namespace prepot;

  CLI::App app{"Prepotential models: spectra, Bethe ansatz roots and numerical verification"};
  app.require_subcommand(1, 1);

  std::string model, format, out, config_path;
  int n_max = -1, grid_points = 0;
  bool parallel = false;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--model", model, "preset name, or 'all' for verify");
    sub->add_option("--nmax", n_max, "highest level (default min(5, bound window))")->check(CLI::NonNegativeNumber);
    sub->add_option("--grid-points", grid_points, "fixed grid size; disables refinement");
    sub->add_option("--format", format, "json or csv")->check(CLI::IsMember({"json", "csv"}));
    sub->add_option("--out", out, "write output to PATH");
    sub->add_option("--config", config_path, "JSON run configuration");
  };
  add_common(app.add_subcommand("list-models", "built-in models with their bound-state windows"));
  add_common(app.add_subcommand("spectrum", "closed-form energies against the shape-invariance sum"));
  add_common(app.add_subcommand("bae", "Bethe ansatz roots for levels 1..nmax"));
  add_common(app.add_subcommand("plot-data", "x, V0, V1 and eigenfunctions on a grid"));
  CLI::App* verify = app.add_subcommand("verify", "finite-difference and SUSY checks against the analytic results");
  add_common(verify);
  verify->add_flag("--parallel", parallel, "run model reports concurrently");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::usage;
  }

  RunConfig config;
  try {
    if (!config_path.empty()) config = load_config(config_path);
    if (!model.empty()) {
      config.model = model;
      config.inline_model.reset();
    }
    if (n_max >= 0) config.n_max = n_max;
    if (grid_points != 0) config.grid_points = grid_points;
    if (!format.empty()) config.format = parse_format(format);
    if (!out.empty()) config.out_path = out;
    if (parallel) config.parallel = true;
  } catch (const InputError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code::usage;
  }

  const std::string command = app.get_subcommands().front()->get_name();
  return run_command(command, config, std::cout, std::cerr);
}
