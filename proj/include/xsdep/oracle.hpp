#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "xsdep/ols.hpp"
#include "xsdep/traces.hpp"

namespace xsdep {

// Closed-form identities used as an independent correctness layer for the
// statistics pipeline, plus brute-force counterparts of the fast paths.

/// Moment of a uniform point on the unit sphere S^{m-1}:
/// E(prod_i U_i^{2 a_i}).
struct SphereMomentQuery {
    long m = 2;                     // ambient dimension, >= 2
    std::vector<long> exponents;    // a_1..a_k, k <= m, each >= 0
};

/// E(prod U_i^{2a_i}) = prod_i (2a_i - 1)!! / prod_{i=1}^{a} (m + 2i - 2)
/// with a = sum a_i and (-1)!! = 1. Exact products below a = 150 (they fit
/// a long double mantissa region comfortably), log-space above.
double sphere_moment(const SphereMomentQuery& q);

/// First two moments of d'Md for d uniform on the sphere:
/// mean = tr(M)/m, second = (2 tr(M^2) + tr(M)^2) / (m (m+2)).
struct QuadFormMoments {
    double mean = 0.0;
    double second_moment = 0.0;
    double variance = 0.0;
};
QuadFormMoments quad_form_moments(const Eigen::MatrixXd& M);

/// Null moments of a squared residual correlation, given the pair traces:
/// E rho^2 = tr(P_iP_j)/m^2,
/// E rho^4 = 3 (2 tr((P_iP_j)^2) + tr(P_iP_j)^2) / (m^2 (m+2)^2),
/// Var rho^2 = 6 tr((P_iP_j)^2)/(m^2(m+2)^2)
///           + 2 (m^2-2m-2) tr(P_iP_j)^2/(m^4 (m+2)^2).
struct RhoMoments {
    double e_rho2 = 0.0;
    double e_rho4 = 0.0;
    double var_rho2 = 0.0;
};
RhoMoments rho_moments(double trace_pp, double trace_ppsq, long m);

/// Dense T x T reference for pair_traces: builds every P_i = I - Q_iQ_i'
/// and multiplies. Refuses N*T^2 > 1e8 (TooLargeError).
PairTraceTable trace_brute_force(const ResidualSet& res);

/// Monte Carlo check that the sum and max statistics decouple under the
/// Gaussian null: simulates `reps` datasets (p iid N(0,1) regressors when
/// p > 0) and records both transformed statistics per replication.
struct IndependenceDiagnostic {
    double corr = 0.0;              // empirical correlation of the two
    double joint_tail_ratio = 0.0;  // P(both above own 80th pct) / 0.04
    std::vector<double> sum_transformed;
    std::vector<double> max_transformed;
};
IndependenceDiagnostic independence_diagnostic(long reps, long N, long T,
                                               long p,
                                               std::uint64_t master_seed,
                                               int n_threads = 1);

/// One verify-suite check: closed-form target vs estimate, with the Monte
/// Carlo standard error where one applies (0 for exact identities).
struct VerifyCheck {
    std::string name;
    double target = 0.0;
    double estimate = 0.0;
    double std_error = 0.0;
    double tolerance = 0.0;  // allowed |estimate - target|
    bool pass = false;
};

struct VerifyOptions {
    std::uint64_t master_seed = 1;
    bool deep = false;  // full-scale independence diagnostic (minutes)
    int n_threads = 1;
};

/// Runs the whole oracle suite; every check reports target, estimate, and
/// standard error. MC sample sizes are chosen so 4 standard errors stay
/// under 5% of the target.
std::vector<VerifyCheck> run_verify_suite(const VerifyOptions& opts);

}  // namespace xsdep
