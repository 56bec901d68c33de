#include "prepot/output.hpp"

#include "prepot/susy.hpp"

#include <cmath>
#include <cstdio>

namespace prepot {

namespace {

void indent(std::ostream& os, int depth) {
  for (int i = 0; i < depth; ++i) os << "  ";
}

void emit(std::ostream& os, const Json& j, int depth) {
  switch (j.type()) {
  case Json::value_t::object: {
    if (j.empty()) {
      os << "{}";
      return;
    }
    os << "{\n";
    bool first = true;
    for (const auto& [key, value] : j.items()) {
      if (!first) os << ",\n";
      first = false;
      indent(os, depth + 1);
      os << Json(key).dump() << ": ";
      emit(os, value, depth + 1);
    }
    os << "\n";
    indent(os, depth);
    os << "}";
    return;
  }
  case Json::value_t::array: {
    if (j.empty()) {
      os << "[]";
      return;
    }
    // Arrays of scalars stay on one line.
    bool scalars = true;
    for (const auto& v : j) scalars = scalars && !v.is_structured();
    if (scalars) {
      os << "[";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) os << ", ";
        emit(os, j[i], depth + 1);
      }
      os << "]";
      return;
    }
    os << "[\n";
    for (std::size_t i = 0; i < j.size(); ++i) {
      if (i) os << ",\n";
      indent(os, depth + 1);
      emit(os, j[i], depth + 1);
    }
    os << "\n";
    indent(os, depth);
    os << "]";
    return;
  }
  case Json::value_t::number_float: {
    const double v = j.get<double>();
    os << (std::isfinite(v) ? format_number(v) : "null");
    return;
  }
  default:
    os << j.dump();
  }
}

} // namespace

std::string coordinate_label(const CanonicalForm& form) {
  if (const auto* q = std::get_if<QuadQ>(&form.variant)) {
    if (q->alpha < 0.0) return "sin";
    return q->delta == 0 ? "exp" : (q->delta > 0 ? "sinh" : "cosh");
  }
  if (const auto* n = std::get_if<NonSinusoidal>(&form.variant)) return branch_name(n->branch);
  return std::holds_alternative<ConstQ>(form.variant) ? "linear" : "quadratic";
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

void write_json(std::ostream& os, const Json& j) {
  emit(os, j, 0);
  os << "\n";
}

void CsvTable::add_row(const std::vector<double>& values) {
  std::vector<std::string> row;
  row.reserve(values.size());
  for (double v : values) row.push_back(format_number(v));
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& os, const CsvTable& table) {
  auto line = [&os](const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << "\n";
  };
  line(table.header);
  for (const auto& r : table.rows) line(r);
}

Json parameters_json(const ModelSpec& model) {
  Json p;
  if (const auto* s = std::get_if<SinusoidalModel>(&model.family)) {
    p["a"] = s->a;
    p["b"] = s->b;
    p["alpha"] = s->q.alpha;
    p["beta"] = s->q.beta;
    p["gamma"] = s->q.gamma;
  } else {
    const auto& n = std::get<NonSinusoidalModel>(model.family);
    p["A"] = n.A;
    p["B"] = n.B;
    p["lambda"] = n.lambda;
    p["branch"] = branch_name(std::get<NonSinusoidal>(n.form.variant).branch);
  }
  return p;
}

Json model_summary_json(const Preset& preset) {
  Json j;
  j["name"] = preset.name;
  j["family"] = preset.family;
  j["case"] = family_case_name(family_case(preset.model));
  j["coordinate"] = coordinate_label(preset.model.form());
  j["parameters"] = parameters_json(preset.model);
  j["max_bound_level"] = preset.model.max_bound_level ? Json(*preset.model.max_bound_level) : Json(nullptr);
  j["window"] = describe_window(preset.model);
  return j;
}

Json report_json(const VerificationReport& r) {
  Json j;
  j["model"] = r.model;
  j["n_max"] = r.n_max;
  j["singular"] = r.singular;
  j["energy_tolerance"] = r.energy_tolerance;
  j["fd_grid"] = Json{{"x_min", r.fd_grid.x_min}, {"x_max", r.fd_grid.x_max}, {"points", r.fd_grid.points}};
  Json levels = Json::array();
  for (const auto& l : r.levels)
    levels.push_back(Json{{"N", l.N},
                          {"E_analytic", l.E_analytic},
                          {"E_fd", l.E_fd},
                          {"abs_err", l.abs_err},
                          {"wave_residual", l.wave_residual},
                          {"nodes", l.nodes}});
  j["levels"] = std::move(levels);
  Json partner = Json::array();
  for (const auto& p : r.susy.partner_levels)
    partner.push_back(Json{{"n", p.n},
                           {"E_partner_fd", p.E_partner_fd},
                           {"E_original_fd", p.E_original_fd},
                           {"abs_diff", p.abs_diff}});
  j["susy_checks"] = Json{{"ground_annihilation", r.susy.ground_annihilation},
                          {"partner_gap_match", r.susy.partner_gap_match},
                          {"partner_levels", std::move(partner)}};
  j["si_residual"] = r.si_residual;
  j["si_telescoping"] = r.si_telescoping;
  j["passed"] = r.passed;
  return j;
}

} // namespace prepot
