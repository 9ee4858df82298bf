#include "xsdep/montecarlo.hpp"

#include <chrono>
#include <optional>

#include "xsdep/correlation.hpp"
#include "xsdep/errors.hpp"
#include "xsdep/ols.hpp"
#include "xsdep/parallel.hpp"
#include "xsdep/traces.hpp"

namespace xsdep {

std::array<bool, 5> run_one_replication(const DgpConfig& cfg,
                                        std::uint32_t replication) {
    const PanelDataset data = make_replication(cfg, replication);
    const ResidualSet res = ols_residuals(data);
    const PairTraceTable traces = pair_traces(res);
    const CorrMatrix corr = residual_corr(res);

    const TestOutcome sn = sum_test(corr, traces, cfg.T, cfg.alpha);
    const TestOutcome qn = adjusted_lm_test(corr, traces, cfg.T, cfg.alpha);
    const TestOutcome ln = max_test(corr, cfg.T, cfg.N, cfg.alpha);
    const TestOutcome cn = max_sum_test(sn, ln, cfg.alpha);
    const TestOutcome cd =
        cd_test(corr, cfg.T, cfg.alpha, cfg.cd_two_sided);
    return {sn.reject, qn.reject, ln.reject, cn.reject, cd.reject};
}

SimReport run_monte_carlo(const DgpConfig& cfg, int n_threads,
                          bool keep_decisions) {
    return run_monte_carlo(cfg, n_threads, keep_decisions,
                           run_one_replication);
}

SimReport run_monte_carlo(const DgpConfig& cfg, int n_threads,
                          bool keep_decisions,
                          const ReplicationRunner& runner) {
    cfg.validate();
    const auto start = std::chrono::steady_clock::now();

    const long reps = cfg.replications;
    std::vector<std::optional<std::array<bool, 5>>> results(reps);
    parallel_for(reps, n_threads, [&](long r) {
        try {
            results[r] = runner(cfg, static_cast<std::uint32_t>(r));
        } catch (const Error&) {
            // counted below; a handful of degenerate draws must not kill
            // the whole experiment, but silence would bias the rates
        }
    });

    SimReport report;
    report.config = cfg;
    long completed = 0;
    std::array<long, 5> rejects{};
    for (long r = 0; r < reps; ++r) {
        if (!results[r]) continue;
        ++completed;
        for (int k = 0; k < 5; ++k)
            if ((*results[r])[k]) ++rejects[k];
        if (keep_decisions) report.decisions.push_back(*results[r]);
    }
    report.replications_completed = completed;
    report.failures = reps - completed;
    if (report.failures * 100 > reps)
        throw SimAbortError("more than 1% of replications failed (" +
                            std::to_string(report.failures) + " of " +
                            std::to_string(reps) + ")");
    for (int k = 0; k < 5; ++k)
        report.rejection_rate[k] =
            completed > 0 ? static_cast<double>(rejects[k]) / completed : 0.0;

    report.elapsed_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    return report;
}

std::vector<SimReport> run_power_curve(const DgpConfig& cfg_template,
                                       const std::vector<long>& n_values,
                                       int n_threads) {
    std::vector<SimReport> out;
    out.reserve(n_values.size());
    for (long n : n_values) {
        DgpConfig cfg = cfg_template;
        cfg.T = 50;
        cfg.N = 200;
        cfg.p = 2;
        cfg.error_law = ErrorLaw::normal;
        cfg.hypothesis = Hypothesis::power_curve;
        cfg.power_n = n;
        cfg.master_seed =
            derive_seed(cfg_template.master_seed, static_cast<std::uint64_t>(n));
        out.push_back(run_monte_carlo(cfg, n_threads));
    }
    return out;
}

}  // namespace xsdep
