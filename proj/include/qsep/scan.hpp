#pragma once

#include "qsep/criteria.hpp"
#include "qsep/states.hpp"

#include <json.hpp>

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace qsep {

// One number everywhere: 12 significant digits, '.' decimal separator,
// no locale dependence.
std::string format_double(double v);

// Flat JSON object {criterion_id, params, lhs, rhs, margin, violated, tol}.
nlohmann::json report_to_json(const CriterionReport& report);

// run_all as a JSON array; per-criterion errors are appended to *errors.
// extra_params (e.g. the family parameters the state was built from) are
// merged into each report's params, without overriding the criterion's own.
nlohmann::json check_to_json(const BipartiteState& state, const std::vector<double>& theta_grid,
                             double tol, std::vector<std::string>* errors = nullptr,
                             const std::map<std::string, double>& extra_params = {});

struct AxisSpec {
  std::string param;
  double min = 0.0;
  double max = 1.0;
  int steps = 2;  // >= 2
};

// A family parameter tied to another one, value = factor * source. Lets a
// scan over (t, s) carry r = s/2 along.
struct LinkedParam {
  std::string target;
  double factor = 1.0;
  std::string source;
};

enum class OutputFormat { csv, json };

struct ScanSpec {
  FamilyParams family;
  std::vector<LinkedParam> linked;
  AxisSpec axis1;
  AxisSpec axis2;
  // Criterion ids among {rc, zhang, ppt, theta, mirror_theta, transpose_theta}.
  std::vector<std::string> criteria;
  // Theta values in units of pi; applies to the theta-parameterized criteria.
  std::vector<double> theta_over_pi;
  double tol = kDefaultTol;
};

// Full scan output. Row order: axis1-major, then axis2, then criterion_id
// ascending with theta ascending inside each criterion. Grid points where
// the family constructor rejects the parameters produce a single row with
// status "invalid" and empty result fields. Deterministic: equal specs give
// byte-identical output.
std::string scan_csv(const ScanSpec& spec);
nlohmann::json scan_json(const ScanSpec& spec);

struct BoundarySpec {
  FamilyParams family;
  std::vector<LinkedParam> linked;
  AxisSpec fixed_axis;  // grid of fixed-parameter values
  std::string sweep_param;
  double sweep_min = 0.0;
  double sweep_max = 1.0;
  std::string criterion = "theta";
  double theta_over_pi = 1.0;
  double bisect_tol = 1e-6;
  int max_iterations = 60;
  double tol = kDefaultTol;
};

// Margin-sign bisection along the sweep axis for each fixed value. The
// initial bracket comes from a 32-interval pre-scan; a missing sign change
// is reported as status "no-crossing", never skipped.
std::string boundary_csv(const BoundarySpec& spec);

struct BisectionResult {
  std::optional<double> value;
  int iterations = 0;
  std::string status;  // "ok", "no-crossing" or "max-iterations"
};

// Standalone bisection used by boundary_csv: pre-scans [lo, hi] at
// `prescan_intervals` intervals, then halves the first sign-changing
// bracket until its width is <= width_tol. NaN margins mark invalid points
// and are excluded from brackets.
BisectionResult bisect_margin(const std::function<double(double)>& margin, double lo, double hi,
                              double width_tol, int max_iterations, int prescan_intervals = 32);

// Matrix file format: JSON {dim_a, dim_b, re, im} with row-major entry
// arrays of length (dim_a*dim_b)^2.
BipartiteState read_state_json(const nlohmann::json& j);
BipartiteState read_state_file(const std::string& path);
nlohmann::json state_to_json(const BipartiteState& state);

}  // namespace qsep
