#include <doctest.h>

#include <json.hpp>
#include <sstream>
#include <string>
#include <vector>

#include "xsdep/report.hpp"

using namespace xsdep;
using nlohmann::ordered_json;

namespace {

TestOutcome sample_outcome() {
    TestOutcome out;
    out.test = TestKind::QN;
    out.statistic = 0.6087087282021455;
    out.transformed = 0.6087087282021455;
    out.p_value = 0.27135876032369466;
    out.alpha = 0.05;
    out.reject = false;
    out.n_sections = 2;
    out.n_periods = 22;
    out.n_regressors = 2;
    out.fingerprint = 12345;
    return out;
}

SimReport sample_report(Hypothesis h) {
    SimReport rep;
    rep.config.N = 50;
    rep.config.T = 50;
    rep.config.p = 2;
    rep.config.hypothesis = h;
    rep.config.power_n = h == Hypothesis::power_curve ? 8 : 0;
    rep.config.replications = 100;
    rep.config.master_seed = 42;
    rep.rejection_rate = {0.059, 0.06, 0.011, 0.028, 0.06};
    rep.replications_completed = 100;
    rep.failures = 0;
    rep.elapsed_seconds = 3.25;  // must never appear in serialized form
    return rep;
}

std::vector<std::string> split_lines(const std::string& s) {
    std::vector<std::string> lines;
    std::istringstream in(s);
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    std::istringstream in(line);
    while (std::getline(in, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.push_back("");
    return fields;
}

}  // namespace

TEST_CASE("six significant digits, shortest form") {
    CHECK(format_sig6(0.0) == "0");
    CHECK(format_sig6(2.0) == "2");
    CHECK(format_sig6(0.05) == "0.05");
    CHECK(format_sig6(0.123456789) == "0.123457");
    CHECK(format_sig6(1234567.0) == "1.23457e+06");
    CHECK(format_sig6(-0.0001234567) == "-0.000123457");
    CHECK(format_sig6(0.9819805060619657) == "0.981981");
}

TEST_CASE("outcome json carries every field at full precision") {
    const TestOutcome out = sample_outcome();
    const ordered_json j = outcome_json(out);
    CHECK(j["test"] == "qn");
    CHECK(j["statistic"].get<double>() == out.statistic);
    CHECK(j["transformed"].get<double>() == out.transformed);
    CHECK(j["p_value"].get<double>() == out.p_value);
    CHECK(j["alpha"].get<double>() == out.alpha);
    CHECK(j["reject"].get<bool>() == false);
    CHECK(j["N"].get<long>() == 2);
    CHECK(j["T"].get<long>() == 22);
    CHECK(j["p"].get<long>() == 2);

    // Full-precision round trip through the serialized text.
    const ordered_json back = ordered_json::parse(j.dump());
    CHECK(back["p_value"].get<double>() == out.p_value);
}

TEST_CASE("outcome csv rows agree with the json fields") {
    std::vector<TestOutcome> outs = {sample_outcome(), sample_outcome()};
    outs[1].test = TestKind::CD;
    outs[1].reject = true;
    outs[1].p_value = 0.04550026389635844;

    const std::string csv = outcomes_csv(outs);
    const auto lines = split_lines(csv);
    REQUIRE(lines.size() == 3);
    CHECK(lines[0] == "test,statistic,transformed,p_value,alpha,reject,N,T,p");

    const ordered_json arr = outcomes_json(outs);
    REQUIRE(arr.size() == 2);
    for (std::size_t k = 0; k < 2; ++k) {
        const auto f = split_csv(lines[k + 1]);
        REQUIRE(f.size() == 9);
        CHECK(f[0] == arr[k]["test"].get<std::string>());
        CHECK(f[1] == format_sig6(arr[k]["statistic"].get<double>()));
        CHECK(f[2] == format_sig6(arr[k]["transformed"].get<double>()));
        CHECK(f[3] == format_sig6(arr[k]["p_value"].get<double>()));
        CHECK(f[4] == format_sig6(arr[k]["alpha"].get<double>()));
        CHECK(f[5] == (arr[k]["reject"].get<bool>() ? "true" : "false"));
        CHECK(f[6] == std::to_string(arr[k]["N"].get<long>()));
        CHECK(f[7] == std::to_string(arr[k]["T"].get<long>()));
        CHECK(f[8] == std::to_string(arr[k]["p"].get<long>()));
    }
}

TEST_CASE("simulation report json") {
    SimReport rep = sample_report(Hypothesis::null_h);
    const ordered_json j = sim_report_json(rep);
    CHECK(j["config"]["N"] == 50);
    CHECK(j["config"]["error_law"] == "normal");
    CHECK(j["config"]["hypothesis"] == "null");
    CHECK(!j["config"].contains("n"));
    CHECK(j["config"]["seed"] == 42);
    CHECK(j["config"]["cd_two_sided"] == true);
    CHECK(j["rejection_rate"]["sn"].get<double>() == 0.059);
    CHECK(j["rejection_rate"]["qn"].get<double>() == 0.06);
    CHECK(j["rejection_rate"]["ln"].get<double>() == 0.011);
    CHECK(j["rejection_rate"]["cn"].get<double>() == 0.028);
    CHECK(j["rejection_rate"]["cd"].get<double>() == 0.06);
    CHECK(j["replications_completed"] == 100);
    CHECK(j["failures"] == 0);
    CHECK(!j.contains("decisions"));

    rep.decisions.push_back({true, false, false, false, true});
    const ordered_json with = sim_report_json(rep);
    REQUIRE(with.contains("decisions"));
    CHECK(with["decisions"].size() == 1);
    CHECK(with["decisions"][0]["sn"] == true);
    CHECK(with["decisions"][0]["qn"] == false);
    CHECK(with["decisions"][0]["cd"] == true);

    const SimReport pc = sample_report(Hypothesis::power_curve);
    const ordered_json jpc = sim_report_json(pc);
    CHECK(jpc["config"]["hypothesis"] == "power-curve");
    CHECK(jpc["config"]["n"] == 8);
}

TEST_CASE("simulation report csv: five rows, n only for power curve") {
    const SimReport rep = sample_report(Hypothesis::null_h);
    const auto lines = split_lines(sim_report_csv(rep));
    REQUIRE(lines.size() == 6);
    CHECK(lines[0] ==
          "test,rejection_rate,replications,failures,N,T,p,error_law,"
          "hypothesis,n,alpha,seed");
    const std::vector<std::string> names = {"sn", "qn", "ln", "cn", "cd"};
    for (std::size_t k = 0; k < 5; ++k) {
        const auto f = split_csv(lines[k + 1]);
        REQUIRE(f.size() == 12);
        CHECK(f[0] == names[k]);
        CHECK(f[2] == "100");
        CHECK(f[3] == "0");
        CHECK(f[8] == "null");
        CHECK(f[9] == "");  // cardinality not meaningful off the curve
        CHECK(f[11] == "42");
    }

    const auto pc_lines =
        split_lines(sim_report_csv(sample_report(Hypothesis::power_curve)));
    const auto f = split_csv(pc_lines[1]);
    CHECK(f[8] == "power-curve");
    CHECK(f[9] == "8");
}

TEST_CASE("power curve serializations") {
    std::vector<SimReport> points = {sample_report(Hypothesis::power_curve),
                                     sample_report(Hypothesis::power_curve)};
    points[1].config.power_n = 12;
    points[1].rejection_rate = {0.9, 0.88, 0.5, 0.85, 0.87};

    const auto lines = split_lines(power_curve_csv(points));
    REQUIRE(lines.size() == 11);
    CHECK(lines[0] == "n,test,rejection_rate");
    CHECK(lines[1] == "8,sn,0.059");
    CHECK(lines[6] == "12,sn,0.9");
    CHECK(lines[8] == "12,ln,0.5");

    const ordered_json arr = power_curve_json(points);
    REQUIRE(arr.size() == 2);
    CHECK(arr[0]["config"]["n"] == 8);
    CHECK(arr[1]["config"]["n"] == 12);
    CHECK(arr[1]["rejection_rate"]["ln"].get<double>() == 0.5);
}

TEST_CASE("verify report json aggregates the pass flag") {
    VerifyCheck good;
    good.name = "alpha";
    good.target = 1.0;
    good.estimate = 1.0;
    good.tolerance = 0.1;
    good.pass = true;
    VerifyCheck bad = good;
    bad.name = "beta";
    bad.pass = false;

    const ordered_json all_good = verify_json({good, good});
    CHECK(all_good["all_pass"] == true);
    CHECK(all_good["checks"].size() == 2);
    CHECK(all_good["checks"][0]["name"] == "alpha");

    const ordered_json mixed = verify_json({good, bad});
    CHECK(mixed["all_pass"] == false);
    CHECK(mixed["checks"][1]["pass"] == false);
}

TEST_CASE("matrix csv") {
    Eigen::MatrixXd m(2, 3);
    m << 1.0, 2.0, 3.0, 4.0, 5.5, -0.123456789;
    CHECK(matrix_csv(m) == "1,2,3\n4,5.5,-0.123457\n");
}

TEST_CASE("serialized reports never leak wall-clock telemetry") {
    SimReport rep = sample_report(Hypothesis::null_h);
    rep.decisions.push_back({true, true, true, true, true});
    const std::string json_text = sim_report_json(rep).dump(2);
    const std::string csv_text = sim_report_csv(rep);
    CHECK(json_text.find("elapsed") == std::string::npos);
    CHECK(json_text.find("3.25") == std::string::npos);
    CHECK(csv_text.find("elapsed") == std::string::npos);
    CHECK(csv_text.find("3.25") == std::string::npos);
    const std::string pc_text =
        power_curve_json({sample_report(Hypothesis::power_curve)}).dump();
    CHECK(pc_text.find("elapsed") == std::string::npos);
}
