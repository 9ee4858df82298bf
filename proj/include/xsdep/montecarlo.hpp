#pragma once

#include <array>
#include <functional>
#include <vector>

#include "xsdep/dgp.hpp"
#include "xsdep/stat_tests.hpp"

namespace xsdep {

/// Fixed reporting order of the five tests.
inline constexpr std::array<TestKind, 5> kTestOrder = {
    TestKind::SN, TestKind::QN, TestKind::LN, TestKind::CN, TestKind::CD};

/// Aggregated size/power estimate for one configuration.
///
/// elapsed_seconds is runtime telemetry: it goes to stderr, never into
/// serialized reports, so outputs stay byte-identical across runs.
struct SimReport {
    DgpConfig config;
    std::array<double, 5> rejection_rate{};  // kTestOrder indexing
    long replications_completed = 0;
    long failures = 0;
    double elapsed_seconds = 0.0;
    std::vector<std::array<bool, 5>> decisions;  // kept on request
};

/// Runs the five tests on one simulated replication; returns the
/// rejection decisions in kTestOrder.
std::array<bool, 5> run_one_replication(const DgpConfig& cfg,
                                        std::uint32_t replication);

using ReplicationRunner =
    std::function<std::array<bool, 5>(const DgpConfig&, std::uint32_t)>;

/// Full size/power experiment. Replications run independently (counter
/// streams keyed by replication index), so the report is identical whether
/// execution is serial or parallel. Replications that fail with a library
/// error are counted; more than 1% failures aborts with SimAbortError.
SimReport run_monte_carlo(const DgpConfig& cfg, int n_threads = 1,
                          bool keep_decisions = false);

/// Same, with an injectable per-replication runner (test seam for the
/// failure-accounting policy).
SimReport run_monte_carlo(const DgpConfig& cfg, int n_threads,
                          bool keep_decisions,
                          const ReplicationRunner& runner);

/// Power curve: fixes T=50, N=200, p=2, normal errors under the
/// power-curve alternative and sweeps the subset cardinality n. Each point
/// gets a seed derived from the template's master seed and its n, so
/// points are independent but the sweep stays reproducible.
std::vector<SimReport> run_power_curve(const DgpConfig& cfg_template,
                                       const std::vector<long>& n_values,
                                       int n_threads = 1);

}  // namespace xsdep
