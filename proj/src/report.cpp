#include "xsdep/report.hpp"

#include <cstdio>

namespace xsdep {

using nlohmann::ordered_json;

std::string format_sig6(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

ordered_json outcome_json(const TestOutcome& out) {
    ordered_json j;
    j["test"] = test_name(out.test);
    j["statistic"] = out.statistic;
    j["transformed"] = out.transformed;
    j["p_value"] = out.p_value;
    j["alpha"] = out.alpha;
    j["reject"] = out.reject;
    j["N"] = out.n_sections;
    j["T"] = out.n_periods;
    j["p"] = out.n_regressors;
    return j;
}

ordered_json outcomes_json(const std::vector<TestOutcome>& outs) {
    ordered_json arr = ordered_json::array();
    for (const auto& out : outs) arr.push_back(outcome_json(out));
    return arr;
}

std::string outcomes_csv(const std::vector<TestOutcome>& outs) {
    std::string csv = "test,statistic,transformed,p_value,alpha,reject,N,T,p\n";
    for (const auto& out : outs) {
        csv += test_name(out.test);
        csv += "," + format_sig6(out.statistic);
        csv += "," + format_sig6(out.transformed);
        csv += "," + format_sig6(out.p_value);
        csv += "," + format_sig6(out.alpha);
        csv += out.reject ? ",true" : ",false";
        csv += "," + std::to_string(out.n_sections);
        csv += "," + std::to_string(out.n_periods);
        csv += "," + std::to_string(out.n_regressors);
        csv += "\n";
    }
    return csv;
}

namespace {

ordered_json config_json(const DgpConfig& cfg) {
    ordered_json j;
    j["N"] = cfg.N;
    j["T"] = cfg.T;
    j["p"] = cfg.p;
    j["error_law"] = error_law_name(cfg.error_law);
    j["hypothesis"] = hypothesis_name(cfg.hypothesis);
    if (cfg.hypothesis == Hypothesis::power_curve) j["n"] = cfg.power_n;
    j["replications"] = cfg.replications;
    j["seed"] = cfg.master_seed;
    j["alpha"] = cfg.alpha;
    j["cd_two_sided"] = cfg.cd_two_sided;
    return j;
}

}  // namespace

ordered_json sim_report_json(const SimReport& report) {
    ordered_json j;
    j["config"] = config_json(report.config);
    ordered_json rates;
    for (int k = 0; k < 5; ++k)
        rates[test_name(kTestOrder[k])] = report.rejection_rate[k];
    j["rejection_rate"] = rates;
    j["replications_completed"] = report.replications_completed;
    j["failures"] = report.failures;
    if (!report.decisions.empty()) {
        ordered_json decs = ordered_json::array();
        for (const auto& d : report.decisions) {
            ordered_json row;
            for (int k = 0; k < 5; ++k) row[test_name(kTestOrder[k])] = d[k];
            decs.push_back(row);
        }
        j["decisions"] = decs;
    }
    return j;
}

std::string sim_report_csv(const SimReport& report) {
    const DgpConfig& cfg = report.config;
    std::string csv =
        "test,rejection_rate,replications,failures,N,T,p,error_law,"
        "hypothesis,n,alpha,seed\n";
    for (int k = 0; k < 5; ++k) {
        csv += test_name(kTestOrder[k]);
        csv += "," + format_sig6(report.rejection_rate[k]);
        csv += "," + std::to_string(report.replications_completed);
        csv += "," + std::to_string(report.failures);
        csv += "," + std::to_string(cfg.N);
        csv += "," + std::to_string(cfg.T);
        csv += "," + std::to_string(cfg.p);
        csv += std::string(",") + error_law_name(cfg.error_law);
        csv += std::string(",") + hypothesis_name(cfg.hypothesis);
        csv += "," + (cfg.hypothesis == Hypothesis::power_curve
                          ? std::to_string(cfg.power_n)
                          : std::string());
        csv += "," + format_sig6(cfg.alpha);
        csv += "," + std::to_string(cfg.master_seed);
        csv += "\n";
    }
    return csv;
}

ordered_json power_curve_json(const std::vector<SimReport>& points) {
    ordered_json arr = ordered_json::array();
    for (const auto& report : points) arr.push_back(sim_report_json(report));
    return arr;
}

std::string power_curve_csv(const std::vector<SimReport>& points) {
    std::string csv = "n,test,rejection_rate\n";
    for (const auto& report : points)
        for (int k = 0; k < 5; ++k) {
            csv += std::to_string(report.config.power_n);
            csv += std::string(",") + test_name(kTestOrder[k]);
            csv += "," + format_sig6(report.rejection_rate[k]);
            csv += "\n";
        }
    return csv;
}

ordered_json verify_json(const std::vector<VerifyCheck>& checks) {
    ordered_json j;
    bool all = true;
    ordered_json arr = ordered_json::array();
    for (const auto& c : checks) {
        ordered_json entry;
        entry["name"] = c.name;
        entry["target"] = c.target;
        entry["estimate"] = c.estimate;
        entry["std_error"] = c.std_error;
        entry["tolerance"] = c.tolerance;
        entry["pass"] = c.pass;
        arr.push_back(entry);
        all = all && c.pass;
    }
    j["checks"] = arr;
    j["all_pass"] = all;
    return j;
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
    std::string csv;
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.cols(); ++j) {
            if (j) csv += ",";
            csv += format_sig6(m(i, j));
        }
        csv += "\n";
    }
    return csv;
}

}  // namespace xsdep
