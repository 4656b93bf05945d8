#include "qsep/scan.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <optional>
#include <sstream>

namespace qsep {

std::string format_double(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

nlohmann::json report_to_json(const CriterionReport& report) {
  return nlohmann::json{{"criterion_id", report.criterion_id}, {"params", report.params},
                        {"lhs", report.lhs},                   {"rhs", report.rhs},
                        {"margin", report.margin},             {"violated", report.violated},
                        {"tol", report.tol}};
}

nlohmann::json check_to_json(const BipartiteState& state, const std::vector<double>& theta_grid,
                             double tol, std::vector<std::string>* errors,
                             const std::map<std::string, double>& extra_params) {
  nlohmann::json out = nlohmann::json::array();
  for (CriterionReport r : run_all(state, theta_grid, tol, errors)) {
    r.params.insert(extra_params.begin(), extra_params.end());
    out.push_back(report_to_json(r));
  }
  return out;
}

namespace {

double axis_value(const AxisSpec& axis, int i) {
  return axis.min + (axis.max - axis.min) * static_cast<double>(i) /
                        static_cast<double>(axis.steps - 1);
}

void validate_axis(const AxisSpec& axis, const char* who) {
  if (axis.steps < 2) {
    throw std::invalid_argument(std::string(who) + ": axis '" + axis.param +
                                "' needs at least 2 steps");
  }
  if (axis.param.empty()) {
    throw std::invalid_argument(std::string(who) + ": axis parameter name is empty");
  }
}

void validate_family_param(const FamilyParams& family, const std::string& param,
                           const char* who) {
  const auto& known = family_parameter_names(family.family);
  if (std::find(known.begin(), known.end(), param) == known.end()) {
    throw std::invalid_argument(std::string(who) + ": '" + param +
                                "' is not a parameter of family '" +
                                family_name(family.family) + "'");
  }
}

FamilyParams resolve_point(const FamilyParams& base, const std::vector<LinkedParam>& linked,
                           const std::vector<std::pair<std::string, double>>& assignments) {
  FamilyParams point = base;
  for (const auto& [name, value] : assignments) {
    point.values[name] = value;
  }
  for (const LinkedParam& link : linked) {
    const auto it = point.values.find(link.source);
    if (it == point.values.end()) {
      throw std::invalid_argument("linked parameter '" + link.target + "' refers to unknown '" +
                                  link.source + "'");
    }
    point.values[link.target] = link.factor * it->second;
  }
  return point;
}

bool criterion_uses_theta(const std::string& id) {
  return id == "theta" || id == "mirror_theta" || id == "transpose_theta";
}

CriterionReport eval_criterion(const BipartiteState& state, const std::string& id, double theta,
                               double tol) {
  if (id == "rc") return rc(state, tol);
  if (id == "zhang") return zhang(state, tol);
  if (id == "ppt") return ppt_check(state, tol);
  if (id == "theta") return theta_criterion(state, theta, tol);
  if (id == "mirror_theta") return mirror_theta_criterion(state, theta, tol);
  if (id == "transpose_theta") return transpose_theta_criterion(state, theta, tol);
  throw std::invalid_argument("unknown criterion '" + id + "'");
}

// Bad criterion ids or thetas are spec errors and must abort the whole run;
// only per-point positivity failures of the family may continue as
// "invalid" rows.
void validate_criterion(const std::string& id, double theta_over_pi) {
  if (id != "rc" && id != "zhang" && id != "ppt" && !criterion_uses_theta(id)) {
    throw std::invalid_argument("unknown criterion '" + id + "'");
  }
  if (criterion_uses_theta(id)) {
    const double limit = id == "mirror_theta" ? 2.0 : 1.0;
    if (theta_over_pi < 0.0 || theta_over_pi > limit ||
        (id == "mirror_theta" && theta_over_pi == limit)) {
      throw std::invalid_argument("theta = " + format_double(theta_over_pi) +
                                  "*pi outside the range of criterion '" + id + "'");
    }
  }
}

struct ScanTask {
  std::string criterion;
  double theta_over_pi = 0.0;  // meaningful only when has_theta
  bool has_theta = false;
};

std::vector<ScanTask> build_tasks(const ScanSpec& spec) {
  std::vector<std::string> ids =
      spec.criteria.empty()
          ? std::vector<std::string>{"ppt", "rc", "theta", "transpose_theta", "zhang"}
          : spec.criteria;
  std::sort(ids.begin(), ids.end());
  ids.erase(std::unique(ids.begin(), ids.end()), ids.end());
  std::vector<double> thetas =
      spec.theta_over_pi.empty() ? std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0}
                                 : spec.theta_over_pi;
  std::sort(thetas.begin(), thetas.end());

  std::vector<ScanTask> tasks;
  for (const std::string& id : ids) {
    if (criterion_uses_theta(id)) {
      for (double u : thetas) tasks.push_back({id, u, true});
    } else {
      tasks.push_back({id, 0.0, false});
    }
  }
  return tasks;
}

struct ScanRow {
  std::string axis1;
  double axis1_value = 0.0;
  std::string axis2;
  double axis2_value = 0.0;
  std::string criterion_id;  // empty on invalid points
  std::optional<double> theta_over_pi;
  std::optional<double> lhs, rhs, margin;
  std::optional<bool> violated;
  std::string status;
};

std::vector<ScanRow> run_scan(const ScanSpec& spec) {
  validate_axis(spec.axis1, "scan");
  validate_axis(spec.axis2, "scan");
  validate_family_param(spec.family, spec.axis1.param, "scan");
  validate_family_param(spec.family, spec.axis2.param, "scan");
  if (spec.axis1.param == spec.axis2.param) {
    throw std::invalid_argument("scan: the two axes must name distinct parameters");
  }
  const std::vector<ScanTask> tasks = build_tasks(spec);
  for (const ScanTask& task : tasks) validate_criterion(task.criterion, task.theta_over_pi);

  std::vector<ScanRow> rows;
  for (int i = 0; i < spec.axis1.steps; ++i) {
    const double v1 = axis_value(spec.axis1, i);
    for (int j = 0; j < spec.axis2.steps; ++j) {
      const double v2 = axis_value(spec.axis2, j);
      ScanRow base;
      base.axis1 = spec.axis1.param;
      base.axis1_value = v1;
      base.axis2 = spec.axis2.param;
      base.axis2_value = v2;
      base.status = "ok";
      const FamilyParams point = resolve_point(
          spec.family, spec.linked, {{spec.axis1.param, v1}, {spec.axis2.param, v2}});
      std::optional<BipartiteState> state;
      try {
        state.emplace(make_family_state(point));
      } catch (const std::invalid_argument&) {
        ScanRow row = base;
        row.status = "invalid";
        rows.push_back(std::move(row));
        continue;
      }
      for (const ScanTask& task : tasks) {
        ScanRow row = base;
        row.criterion_id = task.criterion;
        if (task.has_theta) row.theta_over_pi = task.theta_over_pi;
        const CriterionReport report =
            eval_criterion(*state, task.criterion, task.theta_over_pi * M_PI, spec.tol);
        row.lhs = report.lhs;
        row.rhs = report.rhs;
        row.margin = report.margin;
        row.violated = report.violated;
        rows.push_back(std::move(row));
      }
    }
  }
  return rows;
}

std::string opt_str(const std::optional<double>& v) { return v ? format_double(*v) : ""; }

}  // namespace

std::string scan_csv(const ScanSpec& spec) {
  std::ostringstream out;
  out << "axis1,axis1_value,axis2,axis2_value,criterion_id,theta_over_pi,lhs,rhs,margin,"
         "violated,status\n";
  for (const ScanRow& row : run_scan(spec)) {
    out << row.axis1 << ',' << format_double(row.axis1_value) << ',' << row.axis2 << ','
        << format_double(row.axis2_value) << ',' << row.criterion_id << ','
        << opt_str(row.theta_over_pi) << ',' << opt_str(row.lhs) << ',' << opt_str(row.rhs) << ','
        << opt_str(row.margin) << ','
        << (row.violated ? (*row.violated ? "true" : "false") : "") << ',' << row.status << '\n';
  }
  return out.str();
}

nlohmann::json scan_json(const ScanSpec& spec) {
  nlohmann::json out = nlohmann::json::array();
  for (const ScanRow& row : run_scan(spec)) {
    nlohmann::json j{{"axis1", row.axis1},
                     {"axis1_value", row.axis1_value},
                     {"axis2", row.axis2},
                     {"axis2_value", row.axis2_value},
                     {"criterion_id", row.criterion_id},
                     {"status", row.status}};
    if (row.theta_over_pi) j["theta_over_pi"] = *row.theta_over_pi;
    if (row.lhs) j["lhs"] = *row.lhs;
    if (row.rhs) j["rhs"] = *row.rhs;
    if (row.margin) j["margin"] = *row.margin;
    if (row.violated) j["violated"] = *row.violated;
    out.push_back(std::move(j));
  }
  return out;
}

BisectionResult bisect_margin(const std::function<double(double)>& margin, double lo, double hi,
                              double width_tol, int max_iterations, int prescan_intervals) {
  if (!(hi > lo) || prescan_intervals < 1) {
    throw std::invalid_argument("bisect_margin: bad interval or prescan count");
  }
  // Pre-scan for the first bracket with a sign change between valid points.
  double bracket_lo = 0.0, bracket_hi = 0.0, m_lo = 0.0;
  bool have_bracket = false;
  double prev_x = lo;
  double prev_m = margin(lo);
  for (int i = 1; i <= prescan_intervals; ++i) {
    const double x = lo + (hi - lo) * static_cast<double>(i) / prescan_intervals;
    const double m = margin(x);
    if (std::isfinite(prev_m) && std::isfinite(m) &&
        ((prev_m <= 0.0 && m > 0.0) || (prev_m > 0.0 && m <= 0.0))) {
      bracket_lo = prev_x;
      bracket_hi = x;
      m_lo = prev_m;
      have_bracket = true;
      break;
    }
    prev_x = x;
    prev_m = m;
  }
  if (!have_bracket) {
    return {std::nullopt, 0, "no-crossing"};
  }
  int iterations = 0;
  while (bracket_hi - bracket_lo > width_tol) {
    if (iterations >= max_iterations) {
      return {0.5 * (bracket_lo + bracket_hi), iterations, "max-iterations"};
    }
    const double mid = 0.5 * (bracket_lo + bracket_hi);
    const double m_mid = margin(mid);
    ++iterations;
    if (!std::isfinite(m_mid)) {
      return {std::nullopt, iterations, "no-crossing"};
    }
    const bool same_side = (m_lo <= 0.0) == (m_mid <= 0.0);
    if (same_side) {
      bracket_lo = mid;
      m_lo = m_mid;
    } else {
      bracket_hi = mid;
    }
  }
  return {0.5 * (bracket_lo + bracket_hi), iterations, "ok"};
}

std::string boundary_csv(const BoundarySpec& spec) {
  validate_axis(spec.fixed_axis, "boundary");
  validate_family_param(spec.family, spec.fixed_axis.param, "boundary");
  validate_family_param(spec.family, spec.sweep_param, "boundary");
  validate_criterion(spec.criterion, spec.theta_over_pi);
  if (!(spec.sweep_max > spec.sweep_min)) {
    throw std::invalid_argument("boundary: sweep interval is empty");
  }
  if (spec.sweep_param == spec.fixed_axis.param) {
    throw std::invalid_argument("boundary: sweep and fixed axes must differ");
  }
  std::ostringstream out;
  out << "fixed_param,fixed_value,sweep_param,boundary_value,iterations,status\n";
  for (int i = 0; i < spec.fixed_axis.steps; ++i) {
    const double fixed_value = axis_value(spec.fixed_axis, i);
    auto margin_at = [&](double x) -> double {
      const FamilyParams point =
          resolve_point(spec.family, spec.linked,
                        {{spec.fixed_axis.param, fixed_value}, {spec.sweep_param, x}});
      try {
        const BipartiteState state = make_family_state(point);
        return eval_criterion(state, spec.criterion, spec.theta_over_pi * M_PI, spec.tol).margin;
      } catch (const std::invalid_argument&) {
        // Outside the family's positivity domain.
        return std::numeric_limits<double>::quiet_NaN();
      }
    };
    const BisectionResult res = bisect_margin(margin_at, spec.sweep_min, spec.sweep_max,
                                              spec.bisect_tol, spec.max_iterations);
    out << spec.fixed_axis.param << ',' << format_double(fixed_value) << ',' << spec.sweep_param
        << ',' << (res.value ? format_double(*res.value) : "") << ',' << res.iterations << ','
        << res.status << '\n';
  }
  return out.str();
}

BipartiteState read_state_json(const nlohmann::json& j) {
  const int dim_a = j.at("dim_a").get<int>();
  const int dim_b = j.at("dim_b").get<int>();
  const auto re = j.at("re").get<std::vector<double>>();
  const auto im = j.at("im").get<std::vector<double>>();
  const std::size_t n = static_cast<std::size_t>(dim_a) * dim_b;
  if (re.size() != n * n || im.size() != n * n) {
    throw std::invalid_argument("state json: re/im must have length (dim_a*dim_b)^2");
  }
  ComplexMatrix m(n, n);
  for (std::size_t row = 0; row < n; ++row) {
    for (std::size_t col = 0; col < n; ++col) {
      m(row, col) = Complex(re[row * n + col], im[row * n + col]);
    }
  }
  return BipartiteState(dim_a, dim_b, std::move(m));
}

BipartiteState read_state_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot open state file '" + path + "'");
  }
  nlohmann::json j;
  in >> j;
  return read_state_json(j);
}

nlohmann::json state_to_json(const BipartiteState& state) {
  const auto& m = state.matrix();
  std::vector<double> re, im;
  re.reserve(m.size());
  im.reserve(m.size());
  for (Eigen::Index row = 0; row < m.rows(); ++row) {
    for (Eigen::Index col = 0; col < m.cols(); ++col) {
      re.push_back(m(row, col).real());
      im.push_back(m(row, col).imag());
    }
  }
  return nlohmann::json{
      {"dim_a", state.dim_a()}, {"dim_b", state.dim_b()}, {"re", re}, {"im", im}};
}

}  // namespace qsep
