#include "prepot/commands.hpp"

#include "prepot/bae.hpp"
#include "prepot/errors.hpp"
#include "prepot/presets.hpp"
#include "prepot/prepotential.hpp"
#include "prepot/susy.hpp"
#include "prepot/verify.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace prepot {

namespace {

constexpr double spectrum_tolerance = 1e-12;
constexpr int plot_default_points = 801;

void reject_unknown(const Json& j, const std::set<std::string>& allowed, const std::string& where) {
  for (const auto& [key, value] : j.items())
    if (!allowed.count(key)) throw InputError("unknown key '" + key + "' in " + where);
}

template <class T> T get_key(const Json& j, const char* key, const std::string& where) {
  if (!j.contains(key)) throw InputError(std::string("missing key '") + key + "' in " + where);
  try {
    return j.at(key).get<T>();
  } catch (const nlohmann::json::exception&) {
    throw InputError(std::string("key '") + key + "' in " + where + " has the wrong type");
  }
}

Branch parse_branch(const std::string& s) {
  for (Branch b : {Branch::Tanh, Branch::Coth, Branch::Inverse, Branch::Cot})
    if (branch_name(b) == s) return b;
  throw InputError("unknown branch '" + s + "' (expected tanh, coth, inverse or cot)");
}

struct Selected {
  std::string name;
  ModelSpec model;
};

std::vector<Selected> select_models(const RunConfig& config, bool allow_all) {
  if (config.inline_model) return {{config.inline_model->name, *config.inline_model}};
  if (config.model.empty() || config.model == "all") {
    if (!allow_all) throw InputError("this command needs --model NAME");
    std::vector<Selected> all;
    for (const auto& p : preset_registry()) all.push_back({p.name, p.model});
    return all;
  }
  const Preset& p = find_preset(config.model);
  return {{p.name, p.model}};
}

ModelSpec single_model(const RunConfig& config) { return select_models(config, false).front().model; }

int resolve_n_max(const RunConfig& config, const ModelSpec& model) {
  const int n = config.n_max.value_or(default_n_max(model));
  if (n < 0) throw InputError("nmax must be non-negative");
  require_level(model, n);
  return n;
}

Json envelope(const std::string& command) {
  Json j;
  j["schema_version"] = schema_version;
  j["command"] = command;
  return j;
}

} // namespace

OutputFormat parse_format(const std::string& s) {
  if (s == "json") return OutputFormat::Json;
  if (s == "csv") return OutputFormat::Csv;
  throw InputError("format must be json or csv, got '" + s + "'");
}

ModelSpec model_from_json(const Json& j) {
  const std::string where = "model object";
  if (!j.is_object()) throw InputError("model must be a preset name or an object");
  const auto family = get_key<std::string>(j, "family", where);
  const std::string name = j.contains("name") ? get_key<std::string>(j, "name", where) : "custom";
  if (family == "sinusoidal") {
    reject_unknown(j, {"family", "name", "a", "b", "alpha", "beta", "gamma"}, where);
    const QuadraticQ q{j.value("alpha", 0.0), j.value("beta", 0.0), j.value("gamma", 0.0)};
    return make_sinusoidal_model(get_key<double>(j, "a", where), get_key<double>(j, "b", where), q, name);
  }
  if (family == "non-sinusoidal") {
    reject_unknown(j, {"family", "name", "A", "B", "lambda", "branch"}, where);
    const double lambda = get_key<double>(j, "lambda", where);
    const Branch branch = j.contains("branch") ? parse_branch(get_key<std::string>(j, "branch", where))
                                               : default_branch(lambda);
    return make_non_sinusoidal_model(get_key<double>(j, "A", where), get_key<double>(j, "B", where), lambda, branch,
                                     name);
  }
  throw InputError("family must be sinusoidal or non-sinusoidal, got '" + family + "'");
}

RunConfig config_from_json(const Json& j) {
  const std::string where = "config";
  if (!j.is_object()) throw InputError("config must be a JSON object");
  reject_unknown(j, {"model", "nmax", "grid_points", "format", "out", "parallel"}, where);
  RunConfig c;
  if (j.contains("model")) {
    if (j["model"].is_string())
      c.model = j["model"].get<std::string>();
    else
      c.inline_model = model_from_json(j["model"]);
  }
  if (j.contains("nmax")) c.n_max = get_key<int>(j, "nmax", where);
  if (j.contains("grid_points")) c.grid_points = get_key<int>(j, "grid_points", where);
  if (j.contains("format")) c.format = parse_format(get_key<std::string>(j, "format", where));
  if (j.contains("out")) c.out_path = get_key<std::string>(j, "out", where);
  if (j.contains("parallel")) c.parallel = get_key<bool>(j, "parallel", where);
  return c;
}

RunConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InputError("cannot open config file " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw InputError("config file " + path + " is not valid JSON: " + e.what());
  }
  return config_from_json(j);
}

int cmd_list_models(const RunConfig& config, std::ostream& out) {
  if (config.format == OutputFormat::Json) {
    Json j = envelope("list-models");
    Json models = Json::array();
    for (const auto& p : preset_registry()) models.push_back(model_summary_json(p));
    j["models"] = std::move(models);
    write_json(out, j);
    return exit_code::ok;
  }
  CsvTable t;
  t.header = {"name", "family", "case", "coordinate", "parameters", "max_bound_level"};
  for (const auto& p : preset_registry()) {
    std::string params;
    const Json pj = parameters_json(p.model);
    for (const auto& [k, v] : pj.items())
      params += (params.empty() ? "" : " ") + k + "=" + (v.is_string() ? v.get<std::string>() : format_number(v.get<double>()));
    const auto& m = p.model;
    t.rows.push_back({p.name, p.family, family_case_name(family_case(m)), coordinate_label(m.form()), params,
                      m.max_bound_level ? std::to_string(*m.max_bound_level) : "inf"});
  }
  write_csv(out, t);
  return exit_code::ok;
}

int cmd_spectrum(const RunConfig& config, std::ostream& out) {
  const ModelSpec model = single_model(config);
  const int n_max = resolve_n_max(config, model);
  const double e0 = energy(model, 0);
  bool ok = true;
  CsvTable t;
  t.header = {"N", "E_closed_form", "E_via_SI", "diff"};
  Json rows = Json::array();
  for (int n = 0; n <= n_max; ++n) {
    const double e = energy(model, n);
    const double si = spectrum_via_si(model, n);
    const double diff = si - (e - e0);
    ok = ok && std::abs(diff) <= spectrum_tolerance;
    t.add_row({double(n), e, si, diff});
    rows.push_back(Json{{"N", n}, {"E_closed_form", e}, {"E_via_SI", si}, {"diff", diff}});
  }
  if (config.format == OutputFormat::Csv) {
    write_csv(out, t);
  } else {
    Json j = envelope("spectrum");
    j["model"] = model.name;
    j["n_max"] = n_max;
    j["rows"] = std::move(rows);
    j["passed"] = ok;
    write_json(out, j);
  }
  return ok ? exit_code::ok : exit_code::verification_failed;
}

int cmd_bae(const RunConfig& config, std::ostream& out) {
  const ModelSpec model = single_model(config);
  const int n_max = resolve_n_max(config, model);
  const std::vector<BaeSolution> sols = continuation_sweep(model, n_max);
  if (config.format == OutputFormat::Csv) {
    CsvTable t;
    t.header = {"N", "k", "root", "residual_norm", "iterations"};
    for (const auto& s : sols)
      for (std::size_t k = 0; k < s.roots.size(); ++k)
        t.add_row({double(s.N), double(k), s.roots[k], s.residual_norm, double(s.iterations)});
    write_csv(out, t);
    return exit_code::ok;
  }
  Json j = envelope("bae");
  j["model"] = model.name;
  j["n_max"] = n_max;
  Json levels = Json::array();
  for (const auto& s : sols)
    levels.push_back(Json{{"N", s.N},
                          {"roots", s.roots},
                          {"residual_norm", s.residual_norm},
                          {"pole_cancellation", pole_cancellation_check(model, s)},
                          {"iterations", s.iterations},
                          {"seed_strategy", seed_strategy_name(s.seed_strategy)}});
  j["levels"] = std::move(levels);
  write_json(out, j);
  return exit_code::ok;
}

int cmd_verify(const RunConfig& config, std::ostream& out) {
  const std::vector<Selected> models = select_models(config, true);
  ReportOptions options;
  options.grid_points = config.grid_points;
  auto one = [&](const Selected& s) { return full_report(s.model, resolve_n_max(config, s.model), options); };

  std::vector<VerificationReport> reports;
  if (config.parallel && models.size() > 1) {
    std::vector<std::future<VerificationReport>> futures;
    for (const auto& s : models) futures.push_back(std::async(std::launch::async, one, std::cref(s)));
    for (auto& f : futures) reports.push_back(f.get());
  } else {
    for (const auto& s : models) reports.push_back(one(s));
  }
  std::stable_sort(reports.begin(), reports.end(),
                   [](const VerificationReport& a, const VerificationReport& b) { return a.model < b.model; });

  const bool ok = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.passed; });
  if (config.format == OutputFormat::Csv) {
    CsvTable t;
    t.header = {"model",         "N",           "E_analytic",          "E_fd",
                "abs_err",       "wave_residual", "nodes",             "energy_tolerance",
                "ground_annihilation", "partner_gap_match", "si_residual", "si_telescoping",
                "passed"};
    for (const auto& r : reports)
      for (const auto& l : r.levels) {
        std::vector<std::string> row{r.model};
        for (double v : {double(l.N), l.E_analytic, l.E_fd, l.abs_err, l.wave_residual, double(l.nodes),
                         r.energy_tolerance, r.susy.ground_annihilation, r.susy.partner_gap_match, r.si_residual,
                         r.si_telescoping, r.passed ? 1.0 : 0.0})
          row.push_back(format_number(v));
        t.rows.push_back(std::move(row));
      }
    write_csv(out, t);
  } else {
    Json j = envelope("verify");
    Json arr = Json::array();
    for (const auto& r : reports) arr.push_back(report_json(r));
    j["reports"] = std::move(arr);
    j["passed"] = ok;
    write_json(out, j);
  }
  return ok ? exit_code::ok : exit_code::verification_failed;
}

int cmd_plot_data(const RunConfig& config, std::ostream& out) {
  const ModelSpec model = single_model(config);
  const int n_max = resolve_n_max(config, model);
  const int points = config.grid_points.value_or(plot_default_points);
  if (points < 16) throw GridTooCoarse("plot-data needs at least 16 points");

  const Interval& domain = model.form().x_domain;
  const Interval w = truncated_domain(model, energy(model, n_max));
  const double inset = 1e-3 * model.form().natural_length();
  const double lo = domain.bounded_below() ? std::max(w.lo, domain.lo + inset) : w.lo;
  const double hi = domain.bounded_above() ? std::min(w.hi, domain.hi - inset) : w.hi;
  std::vector<double> x(static_cast<std::size_t>(points));
  for (int i = 0; i < points; ++i) x[i] = lo + (hi - lo) * i / (points - 1);

  std::vector<BaeSolution> sols{BaeSolution{}};
  for (auto& s : continuation_sweep(model, n_max)) sols.push_back(std::move(s));
  std::vector<std::vector<double>> phi;
  for (const auto& s : sols) phi.push_back(eigenfunction(model, s, x).values);

  CsvTable t;
  t.header = {"x", "V0", "V1"};
  for (int n = 0; n <= n_max; ++n) t.header.push_back("phi_" + std::to_string(n));
  std::vector<double> v0, v1;
  for (int i = 0; i < points; ++i) {
    v0.push_back(potential_v0(model, x[i]));
    v1.push_back(partner_potential(model, x[i]) + energy(model, 0));
    std::vector<double> row{x[i], v0.back(), v1.back()};
    for (const auto& p : phi) row.push_back(p[i]);
    t.add_row(row);
  }
  if (config.format == OutputFormat::Csv) {
    write_csv(out, t);
    return exit_code::ok;
  }
  Json j = envelope("plot-data");
  j["model"] = model.name;
  j["n_max"] = n_max;
  j["x"] = x;
  j["V0"] = v0;
  j["V1"] = v1;
  Json phis = Json::array();
  for (const auto& p : phi) phis.push_back(p);
  j["phi"] = std::move(phis);
  write_json(out, j);
  return exit_code::ok;
}

int run_command(const std::string& command, const RunConfig& config, std::ostream& out, std::ostream& err) {
  try {
    std::ostringstream buffer;
    int code;
    if (command == "list-models")
      code = cmd_list_models(config, buffer);
    else if (command == "spectrum")
      code = cmd_spectrum(config, buffer);
    else if (command == "bae")
      code = cmd_bae(config, buffer);
    else if (command == "verify")
      code = cmd_verify(config, buffer);
    else if (command == "plot-data")
      code = cmd_plot_data(config, buffer);
    else
      throw InputError("unknown command '" + command + "'");

    if (config.out_path.empty()) {
      out << buffer.str();
    } else {
      std::ofstream f(config.out_path, std::ios::binary);
      if (!f) throw InputError("cannot write " + config.out_path);
      f << buffer.str();
    }
    if (code == exit_code::verification_failed) err << "verification failed\n";
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return exit_code::usage;
  } catch (const NumericalError& e) {
    err << "numerical failure: " << e.what() << "\n";
    return exit_code::numerical;
  }
}

} // namespace prepot
