#include "qsep/scan.hpp"

#include "test_helpers.hpp"

#include <doctest.h>

#include <sstream>

using namespace qsep;

namespace {

ScanSpec small_tsr_scan() {
  ScanSpec spec;
  spec.family.family = Family::two_qubit_tsr;
  spec.linked.push_back({"r", 0.5, "s"});
  spec.axis1 = {"t", 0.0, 0.25, 2};
  spec.axis2 = {"s", 0.0, 0.9, 2};
  spec.criteria = {"rc", "theta"};
  spec.theta_over_pi = {0.0, 1.0};
  return spec;
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> lines;
  std::stringstream stream(text);
  std::string line;
  while (std::getline(stream, line)) lines.push_back(line);
  return lines;
}

}  // namespace

TEST_CASE("format_double uses 12 significant digits and a point separator") {
  CHECK(format_double(0.75) == "0.75");
  CHECK(format_double(1.0 / 3.0) == "0.333333333333");
  CHECK(format_double(-2.5e-11) == "-2.5e-11");
  CHECK(format_double(3.0) == "3");
}

TEST_CASE("report JSON carries exactly the contract fields") {
  const CriterionReport r = rc(max_entangled(2));
  const nlohmann::json j = report_to_json(r);
  CHECK(j.at("criterion_id") == "rc");
  CHECK(j.at("lhs").get<double>() == doctest::Approx(2.0));
  CHECK(j.at("rhs").get<double>() == 1.0);
  CHECK(j.at("margin").get<double>() == doctest::Approx(1.0));
  CHECK(j.at("violated").get<bool>());
  CHECK(j.at("tol").get<double>() == kDefaultTol);
  CHECK(j.at("params").is_object());
  CHECK(j.size() == 7);
}

TEST_CASE("check output lists every evaluated criterion") {
  const nlohmann::json reports = check_to_json(max_entangled(2), {0.0, M_PI}, kDefaultTol);
  REQUIRE(reports.is_array());
  CHECK(reports.size() == 2 + 2 * 2 + 1);
  CHECK(reports[0].at("criterion_id") == "ppt");
}

TEST_CASE("check output merges state parameters without clobbering criterion ones") {
  const nlohmann::json reports = check_to_json(two_qubit_tsr(0.2, 0.8, 0.4), {M_PI}, kDefaultTol,
                                               nullptr, {{"t", 0.2}, {"theta", 99.0}});
  for (const auto& report : reports) {
    CHECK(report.at("params").at("t").get<double>() == 0.2);
    if (report.at("criterion_id") == "theta") {
      CHECK(report.at("params").at("theta").get<double>() == doctest::Approx(M_PI));
    }
  }
}

TEST_CASE("degenerate 2x2 grid emits 4 rows per task") {
  const ScanSpec spec = small_tsr_scan();
  // tasks: rc plus theta at two angles -> 3 per grid point
  const std::vector<std::string> lines = lines_of(scan_csv(spec));
  CHECK(lines.front() ==
        "axis1,axis1_value,axis2,axis2_value,criterion_id,theta_over_pi,lhs,rhs,margin,"
        "violated,status");
  CHECK(lines.size() == 1 + 4 * 3);
}

TEST_CASE("scan output is byte-identical across runs") {
  const ScanSpec spec = small_tsr_scan();
  CHECK(scan_csv(spec) == scan_csv(spec));
  CHECK(scan_json(spec).dump() == scan_json(spec).dump());
}

TEST_CASE("scan rows are ordered axis1-major with sorted criteria") {
  ScanSpec spec = small_tsr_scan();
  spec.criteria = {"zhang", "rc"};  // unsorted on purpose
  const std::vector<std::string> lines = lines_of(scan_csv(spec));
  // First grid point: t=0, s=0; rc row precedes zhang row.
  CHECK(lines[1].find("t,0,s,0,rc,") == 0);
  CHECK(lines[2].find("t,0,s,0,zhang,") == 0);
  // axis2 advances before axis1.
  CHECK(lines[3].find("t,0,s,0.9,rc,") == 0);
  CHECK(lines[5].find("t,0.25,s,0,rc,") == 0);
}

TEST_CASE("invalid grid points are flagged and do not abort the scan") {
  ScanSpec spec;
  spec.family.family = Family::two_qubit_tsr;
  spec.linked.push_back({"r", 0.5, "s"});
  spec.axis1 = {"t", 0.0, 2.0, 2};  // t = 2 is far outside the PSD domain
  spec.axis2 = {"s", 0.0, 0.9, 2};
  spec.criteria = {"rc"};
  const std::vector<std::string> lines = lines_of(scan_csv(spec));
  REQUIRE(lines.size() >= 2);
  int invalid = 0, ok = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    if (lines[i].find(",invalid") != std::string::npos) {
      ++invalid;
      CHECK(lines[i].find("rc") == std::string::npos);
    } else {
      ++ok;
    }
  }
  CHECK(invalid == 2);
  CHECK(ok == 2);
}

TEST_CASE("bisection converges on a linear margin") {
  const auto margin = [](double x) { return x - 0.6180339887; };
  const BisectionResult res = bisect_margin(margin, 0.0, 1.0, 1e-6, 60);
  REQUIRE(res.value.has_value());
  CHECK(res.status == "ok");
  CHECK(std::abs(*res.value - 0.6180339887) < 1e-6);
  CHECK(res.iterations <= 25);
}

TEST_CASE("bisection reports a missing crossing") {
  const auto margin = [](double x) { return 1.0 + x; };
  const BisectionResult res = bisect_margin(margin, 0.0, 1.0, 1e-6, 60);
  CHECK_FALSE(res.value.has_value());
  CHECK(res.status == "no-crossing");
}

TEST_CASE("bisection skips invalid samples when bracketing") {
  const auto margin = [](double x) {
    if (x < 0.2) return std::numeric_limits<double>::quiet_NaN();
    return x - 0.5;
  };
  const BisectionResult res = bisect_margin(margin, 0.0, 1.0, 1e-6, 60);
  REQUIRE(res.value.has_value());
  CHECK(std::abs(*res.value - 0.5) < 1e-6);
}

TEST_CASE("boundary output matches the scan sign pattern") {
  BoundarySpec spec;
  spec.family.family = Family::horodecki_mixture;
  spec.fixed_axis = {"a", 0.2, 0.4, 3};
  spec.sweep_param = "p";
  spec.sweep_min = 0.0;
  spec.sweep_max = 1.0;
  spec.criterion = "theta";
  spec.theta_over_pi = 1.0;
  const std::vector<std::string> lines = lines_of(boundary_csv(spec));
  CHECK(lines.front() == "fixed_param,fixed_value,sweep_param,boundary_value,iterations,status");
  REQUIRE(lines.size() == 4);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::stringstream row(lines[i]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    REQUIRE(fields.size() == 6);
    CHECK(fields[0] == "a");
    if (fields[5] == "ok") {
      const double a = std::stod(fields[1]);
      const double boundary = std::stod(fields[3]);
      // Margin signs must flip across the reported boundary.
      const double below =
          theta_criterion(horodecki_mixture(a, std::max(0.0, boundary - 1e-3)), M_PI).margin;
      const double above =
          theta_criterion(horodecki_mixture(a, std::min(1.0, boundary + 1e-3)), M_PI).margin;
      CHECK(below <= 0.0);
      CHECK(above > 0.0);
    }
  }
}

TEST_CASE("full-range qutrit scan: theta=pi region contains the theta=pi/2 region") {
  ScanSpec spec;
  spec.family.family = Family::horodecki_mixture;
  spec.axis1 = {"a", 0.0, 1.0, 9};
  spec.axis2 = {"p", 0.0, 1.0, 9};
  spec.criteria = {"theta"};
  spec.theta_over_pi = {0.5, 1.0};
  const nlohmann::json rows = scan_json(spec);
  std::map<std::pair<double, double>, bool> weaker, stronger;
  for (const auto& row : rows) {
    const auto key = std::make_pair(row.at("axis1_value").get<double>(),
                                    row.at("axis2_value").get<double>());
    const bool v = row.at("violated").get<bool>();
    if (row.at("theta_over_pi").get<double>() == 0.5) {
      weaker[key] = v;
    } else {
      stronger[key] = v;
    }
  }
  REQUIRE(weaker.size() == 81);
  for (const auto& [key, v] : weaker) {
    if (v) CHECK(stronger.at(key));
  }
}

TEST_CASE("theta=pi boundary lies at or below the theta=pi/2 boundary") {
  BoundarySpec spec;
  spec.family.family = Family::horodecki_mixture;
  spec.fixed_axis = {"a", 0.1, 0.9, 5};
  spec.sweep_param = "p";
  spec.sweep_min = 0.9;
  spec.sweep_max = 1.0;
  spec.criterion = "theta";
  auto boundaries_at = [&](double theta_over_pi) {
    spec.theta_over_pi = theta_over_pi;
    std::vector<double> values;
    const std::vector<std::string> lines = lines_of(boundary_csv(spec));
    for (std::size_t i = 1; i < lines.size(); ++i) {
      std::stringstream row(lines[i]);
      std::string field;
      std::vector<std::string> fields;
      while (std::getline(row, field, ',')) fields.push_back(field);
      REQUIRE(fields[5] == "ok");
      values.push_back(std::stod(fields[3]));
    }
    return values;
  };
  const std::vector<double> at_pi = boundaries_at(1.0);
  const std::vector<double> at_half_pi = boundaries_at(0.5);
  REQUIRE(at_pi.size() == at_half_pi.size());
  for (std::size_t i = 0; i < at_pi.size(); ++i) {
    CHECK(at_pi[i] <= at_half_pi[i] + 1e-9);
  }
}

TEST_CASE("the two-qubit boundary in t never reaches the separable column") {
  BoundarySpec spec;
  spec.family.family = Family::two_qubit_tsr;
  spec.linked.push_back({"r", 0.5, "s"});
  spec.fixed_axis = {"s", 0.1, 0.9, 5};
  spec.sweep_param = "t";
  spec.sweep_min = 0.0;
  spec.sweep_max = 0.25;
  spec.criterion = "theta";
  spec.theta_over_pi = 1.0;
  const std::vector<std::string> lines = lines_of(boundary_csv(spec));
  for (std::size_t i = 1; i < lines.size(); ++i) {
    std::stringstream row(lines[i]);
    std::string field;
    std::vector<std::string> fields;
    while (std::getline(row, field, ',')) fields.push_back(field);
    if (fields[5] == "ok") {
      CHECK(std::stod(fields[3]) > 0.0);
    }
  }
}

TEST_CASE("state files round trip") {
  const BipartiteState state = horodecki_mixture(0.3, 0.7);
  const nlohmann::json j = state_to_json(state);
  const BipartiteState back = read_state_json(j);
  CHECK(back.dim_a() == 3);
  CHECK(back.dim_b() == 3);
  CHECK(qsep::testing::max_abs_diff(back.matrix(), state.matrix()) == 0.0);

  nlohmann::json bad = j;
  bad["re"] = std::vector<double>{1.0, 2.0};
  CHECK_THROWS_AS(read_state_json(bad), std::invalid_argument);
}
