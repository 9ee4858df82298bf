#include <CLI11.hpp>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>
#include <thread>
#include <vector>

#include "xsdep/correlation.hpp"
#include "xsdep/errors.hpp"
#include "xsdep/montecarlo.hpp"
#include "xsdep/ols.hpp"
#include "xsdep/oracle.hpp"
#include "xsdep/panel.hpp"
#include "xsdep/report.hpp"
#include "xsdep/stat_tests.hpp"
#include "xsdep/traces.hpp"

namespace {

void write_output(const std::string& content, const std::string& out_path) {
    if (out_path.empty()) {
        std::cout << content;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw xsdep::Error("cannot write output file: " + out_path);
    f << content;
}

int default_threads() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
}

struct TestArgs {
    std::string input;
    double alpha = 0.05;
    std::vector<std::string> tests = {"sn", "qn", "ln", "cn", "cd"};
    bool intercept = false;
    bool cd_one_sided = false;
    std::string out, format = "json";
    std::string dump_corr, dump_traces;
};

int cmd_test(const TestArgs& args) {
    xsdep::CsvSchema schema;
    schema.add_intercept = args.intercept;
    const xsdep::PanelDataset data = xsdep::load_panel_csv(args.input, schema);
    const xsdep::ResidualSet res = xsdep::ols_residuals(data);
    const xsdep::PairTraceTable traces = xsdep::pair_traces(res);
    const xsdep::CorrMatrix corr = xsdep::residual_corr(res);

    if (!args.dump_corr.empty())
        write_output(xsdep::matrix_csv(corr.rho), args.dump_corr);
    if (!args.dump_traces.empty())
        write_output(xsdep::matrix_csv(traces.trace_pp) + "\n" +
                         xsdep::matrix_csv(traces.trace_ppsq),
                     args.dump_traces);

    bool selected[5] = {false, false, false, false, false};
    for (const auto& name : args.tests) {
        const xsdep::TestKind kind = xsdep::test_from_name(name);
        for (int k = 0; k < 5; ++k)
            if (xsdep::kTestOrder[k] == kind) selected[k] = true;
    }

    // The combined test needs both of its inputs whether or not they were
    // asked for; compute what is needed, report what was selected.
    std::vector<xsdep::TestOutcome> outs;
    xsdep::TestOutcome sn_out, ln_out;
    const bool need_sn = selected[0] || selected[3];
    const bool need_ln = selected[2] || selected[3];
    if (need_sn) sn_out = xsdep::sum_test(corr, traces, data.n_periods,
                                          args.alpha);
    if (need_ln) ln_out = xsdep::max_test(corr, data.n_periods,
                                          data.n_sections, args.alpha);
    if (selected[0]) outs.push_back(sn_out);
    if (selected[1])
        outs.push_back(xsdep::adjusted_lm_test(corr, traces, data.n_periods,
                                               args.alpha));
    if (selected[2]) outs.push_back(ln_out);
    if (selected[3])
        outs.push_back(xsdep::max_sum_test(sn_out, ln_out, args.alpha));
    if (selected[4])
        outs.push_back(xsdep::cd_test(corr, data.n_periods, args.alpha,
                                      !args.cd_one_sided));

    if (args.format == "csv")
        write_output(xsdep::outcomes_csv(outs), args.out);
    else
        write_output(xsdep::outcomes_json(outs).dump(2) + "\n", args.out);
    return 0;
}

struct SimArgs {
    xsdep::DgpConfig cfg;
    std::string error_law = "normal";
    std::string hypothesis = "null";
    int threads = default_threads();
    bool per_rep = false;
    std::string out, format = "json";
};

int cmd_simulate(SimArgs& args) {
    args.cfg.error_law = xsdep::error_law_from_name(args.error_law);
    args.cfg.hypothesis = xsdep::hypothesis_from_name(args.hypothesis);
    const xsdep::SimReport report =
        xsdep::run_monte_carlo(args.cfg, args.threads, args.per_rep);
    std::cerr << "simulate: " << report.replications_completed << "/"
              << args.cfg.replications << " replications in "
              << report.elapsed_seconds << " s\n";
    if (args.format == "csv")
        write_output(xsdep::sim_report_csv(report), args.out);
    else
        write_output(xsdep::sim_report_json(report).dump(2) + "\n", args.out);
    return 0;
}

struct PowerArgs {
    long n_min = 2, n_max = 16;
    long reps = 1000;
    std::uint64_t seed = 1;
    double alpha = 0.05;
    int threads = default_threads();
    std::string out, format = "csv";
};

int cmd_power_curve(const PowerArgs& args) {
    if (args.n_min < 2 || args.n_max < args.n_min)
        throw xsdep::DomainError("need 2 <= n-min <= n-max");
    xsdep::DgpConfig tpl;
    tpl.replications = args.reps;
    tpl.master_seed = args.seed;
    tpl.alpha = args.alpha;
    std::vector<long> n_values;
    for (long n = args.n_min; n <= args.n_max; ++n) n_values.push_back(n);
    const auto points = xsdep::run_power_curve(tpl, n_values, args.threads);
    double elapsed = 0.0;
    for (const auto& point : points) elapsed += point.elapsed_seconds;
    std::cerr << "power-curve: " << points.size() << " points in " << elapsed
              << " s\n";
    if (args.format == "json")
        write_output(xsdep::power_curve_json(points).dump(2) + "\n", args.out);
    else
        write_output(xsdep::power_curve_csv(points), args.out);
    return 0;
}

struct VerifyArgs {
    xsdep::VerifyOptions opts;
    std::string out;
};

int cmd_verify(const VerifyArgs& args) {
    const auto checks = xsdep::run_verify_suite(args.opts);
    bool all = true;
    for (const auto& c : checks) {
        std::cerr << (c.pass ? "  pass  " : "  FAIL  ") << c.name
                  << ": target " << c.target << ", estimate " << c.estimate;
        if (c.std_error > 0.0) std::cerr << ", se " << c.std_error;
        std::cerr << ", tol " << c.tolerance << "\n";
        all = all && c.pass;
    }
    write_output(xsdep::verify_json(checks).dump(2) + "\n", args.out);
    return all ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{
        "Tests of cross-sectional dependence of OLS residuals in panel "
        "regressions, with a Monte Carlo size/power engine and a "
        "closed-form verification suite."};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Read options from a key=value file (flags win)");

    TestArgs test_args;
    auto* test_cmd =
        app.add_subcommand("test", "Run the dependence tests on a CSV panel");
    test_cmd->add_option("--input", test_args.input,
                         "Panel CSV with header unit,time,y,x1,...,xp")
        ->required();
    test_cmd->add_option("--alpha", test_args.alpha, "Test level in (0,1)");
    test_cmd
        ->add_option("--tests", test_args.tests,
                     "Comma-separated subset of sn,qn,ln,cn,cd")
        ->delimiter(',');
    test_cmd->add_flag("--intercept", test_args.intercept,
                       "Prepend an all-ones design column");
    test_cmd->add_flag("--cd-one-sided", test_args.cd_one_sided,
                       "Upper-tail CD p-value instead of two-sided");
    test_cmd->add_option("--out", test_args.out,
                         "Output file (stdout if omitted)");
    test_cmd->add_option("--format", test_args.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));
    test_cmd->add_option("--dump-corr", test_args.dump_corr,
                         "Write the residual correlation matrix as CSV");
    test_cmd->add_option("--dump-traces", test_args.dump_traces,
                         "Write the pair trace tables as CSV");

    SimArgs sim_args;
    auto* sim_cmd = app.add_subcommand(
        "simulate", "Estimate size or power under a simulated panel");
    sim_cmd->add_option("--N", sim_args.cfg.N, "Sections");
    sim_cmd->add_option("--T", sim_args.cfg.T, "Periods");
    sim_cmd->add_option("--p", sim_args.cfg.p,
                        "Design columns (intercept included)");
    sim_cmd->add_option("--reps", sim_args.cfg.replications, "Replications");
    sim_cmd->add_option("--alpha", sim_args.cfg.alpha, "Test level");
    sim_cmd->add_option("--error-law", sim_args.error_law,
                        "normal, t6, or chi5");
    sim_cmd->add_option("--hypothesis", sim_args.hypothesis,
                        "null, nonsparse, sparse, or power-curve");
    sim_cmd->add_option("--n", sim_args.cfg.power_n,
                        "Subset cardinality for --hypothesis power-curve");
    sim_cmd
        ->add_option("--seed", sim_args.cfg.master_seed,
                     "Master seed (env XSDEP_SEED, else 1)")
        ->envname("XSDEP_SEED");
    sim_cmd->add_option("--threads", sim_args.threads,
                        "Worker threads (result is thread-count invariant)");
    sim_cmd->add_flag("--per-rep", sim_args.per_rep,
                      "Keep per-replication decisions (JSON output)");
    sim_cmd->add_flag("--cd-one-sided{false}", sim_args.cfg.cd_two_sided,
                      "Upper-tail CD p-value instead of two-sided");
    sim_cmd->add_option("--out", sim_args.out, "Output file");
    sim_cmd->add_option("--format", sim_args.format, "json or csv")
        ->check(CLI::IsMember({"json", "csv"}));

    PowerArgs power_args;
    auto* power_cmd = app.add_subcommand(
        "power-curve",
        "Sweep the power-curve alternative over subset cardinalities "
        "(T=50, N=200, p=2, normal errors)");
    power_cmd->add_option("--n-min", power_args.n_min, "Smallest n (>= 2)");
    power_cmd->add_option("--n-max", power_args.n_max, "Largest n");
    power_cmd->add_option("--reps", power_args.reps, "Replications per point");
    power_cmd->add_option("--alpha", power_args.alpha, "Test level");
    power_cmd
        ->add_option("--seed", power_args.seed,
                     "Master seed (env XSDEP_SEED, else 1)")
        ->envname("XSDEP_SEED");
    power_cmd->add_option("--threads", power_args.threads, "Worker threads");
    power_cmd->add_option("--out", power_args.out, "Output file");
    power_cmd->add_option("--format", power_args.format, "csv or json")
        ->check(CLI::IsMember({"json", "csv"}));

    VerifyArgs verify_args;
    auto* verify_cmd = app.add_subcommand(
        "verify", "Run the closed-form and brute-force oracle suite");
    verify_cmd
        ->add_option("--seed", verify_args.opts.master_seed,
                     "Master seed (env XSDEP_SEED, else 1)")
        ->envname("XSDEP_SEED");
    verify_cmd->add_flag("--deep", verify_args.opts.deep,
                         "Full-scale decoupling diagnostic (minutes)");
    verify_cmd->add_option("--threads", verify_args.opts.n_threads,
                           "Worker threads");
    verify_cmd->add_option("--out", verify_args.out,
                           "Output file for the JSON results");

    sim_args.cfg.master_seed = 1;
    power_args.seed = 1;
    verify_args.opts.master_seed = 1;
    verify_args.opts.n_threads = default_threads();

    try {
        app.parse(argc, argv);
        if (test_cmd->parsed()) return cmd_test(test_args);
        if (sim_cmd->parsed()) return cmd_simulate(sim_args);
        if (power_cmd->parsed()) return cmd_power_curve(power_args);
        if (verify_cmd->parsed()) return cmd_verify(verify_args);
        return 2;
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    } catch (const xsdep::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}
