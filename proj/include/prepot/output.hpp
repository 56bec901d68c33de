#pragma once

#include "prepot/presets.hpp"
#include "prepot/verify.hpp"

#include <json.hpp>

#include <ostream>
#include <string>
#include <vector>

namespace prepot {

using Json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

// 17 significant digits, lowercase exponent; non-finite values become null in
// JSON and "nan"/"inf" in CSV.
std::string format_number(double v);

// Pretty-printed with two-space indent and a trailing newline. Floats go
// through format_number so output is byte-stable.
void write_json(std::ostream& os, const Json& j);

struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(const std::vector<double>& values);
};

void write_csv(std::ostream& os, const CsvTable& table);

// Closed form of z(x): linear, quadratic, exp, sinh, cosh, sin, tanh, coth,
// inverse or cot.
std::string coordinate_label(const CanonicalForm& form);

Json parameters_json(const ModelSpec& model);
Json model_summary_json(const Preset& preset);
Json report_json(const VerificationReport& report);

} // namespace prepot
