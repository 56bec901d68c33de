#pragma once

#include "prepot/model.hpp"
#include "prepot/output.hpp"

#include <optional>
#include <ostream>
#include <string>
#include <vector>

namespace prepot {

enum class OutputFormat { Json, Csv };

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int verification_failed = 1;
inline constexpr int usage = 2;
inline constexpr int numerical = 3;
} // namespace exit_code

struct RunConfig {
  // Preset name, "all", or empty; ignored when inline_model is set.
  std::string model;
  std::optional<ModelSpec> inline_model;
  std::optional<int> n_max;
  std::optional<int> grid_points;
  OutputFormat format = OutputFormat::Json;
  std::string out_path;
  bool parallel = false;
};

OutputFormat parse_format(const std::string& s);

// Keys: model (string or object), nmax, grid_points, format, out, parallel.
// Unknown keys throw InputError.
RunConfig config_from_json(const Json& j);
RunConfig load_config(const std::string& path);

// Inline model object: {"family": "sinusoidal", "a", "b", "alpha", "beta",
// "gamma"} or {"family": "non-sinusoidal", "A", "B", "lambda", "branch"}.
ModelSpec model_from_json(const Json& j);

int cmd_list_models(const RunConfig& config, std::ostream& out);
int cmd_spectrum(const RunConfig& config, std::ostream& out);
int cmd_bae(const RunConfig& config, std::ostream& out);
int cmd_verify(const RunConfig& config, std::ostream& out);
int cmd_plot_data(const RunConfig& config, std::ostream& out);

// Dispatches by name, maps exceptions to exit codes and writes messages to
// `err`. Output goes to config.out_path when set, else to `out`.
int run_command(const std::string& command, const RunConfig& config, std::ostream& out, std::ostream& err);

} // namespace prepot
