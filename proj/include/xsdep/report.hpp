#pragma once

#include <Eigen/Dense>
#include <json.hpp>
#include <string>
#include <vector>

#include "xsdep/montecarlo.hpp"
#include "xsdep/oracle.hpp"
#include "xsdep/stat_tests.hpp"

namespace xsdep {

// Serialization of results. CSV values are printed with 6 significant
// digits; JSON keeps full double precision. Reports never contain wall
// times or other run-dependent values, so a repeated invocation with the
// same seed produces byte-identical files.

std::string format_sig6(double v);

nlohmann::ordered_json outcome_json(const TestOutcome& out);
nlohmann::ordered_json outcomes_json(const std::vector<TestOutcome>& outs);
std::string outcomes_csv(const std::vector<TestOutcome>& outs);

nlohmann::ordered_json sim_report_json(const SimReport& report);
std::string sim_report_csv(const SimReport& report);

nlohmann::ordered_json power_curve_json(const std::vector<SimReport>& points);
std::string power_curve_csv(const std::vector<SimReport>& points);

nlohmann::ordered_json verify_json(const std::vector<VerifyCheck>& checks);

/// Plain numeric matrix dump (debugging aid for --dump-corr/--dump-traces).
std::string matrix_csv(const Eigen::MatrixXd& m);

}  // namespace xsdep
