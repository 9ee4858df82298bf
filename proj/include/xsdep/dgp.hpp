#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>
#include <vector>

#include "xsdep/panel.hpp"
#include "xsdep/rng.hpp"

namespace xsdep {

enum class ErrorLaw { normal, t6, chi5 };
enum class Hypothesis { null_h, nonsparse, sparse, power_curve };

const char* error_law_name(ErrorLaw law);
ErrorLaw error_law_from_name(const std::string& name);
const char* hypothesis_name(Hypothesis h);
Hypothesis hypothesis_from_name(const std::string& name);

/// One Monte Carlo experiment.
///
/// The design per replication: y_it = a_i + sum_{l=2..p} x_lit b_li + e_it,
/// with a_i ~ N(0,1), b_li ~ N(1, 0.04), AR(1) regressors (coefficient 0.6,
/// innovation variance zeta_li^2/0.64 with zeta_li^2 ~ chi^2_6/6, 51-step
/// burn-in from zero), and errors from one of the three unit-variance laws.
/// Under the null e_it = sigma_i w_it with sigma_i^2 ~ (p/2) chi^2_2; under
/// the alternatives e_.t = Sigma^{1/2} eta_t with Sigma built over a random
/// subset A of sections.
struct DgpConfig {
    long N = 50;
    long T = 50;
    long p = 2;  // intercept plus p-1 slopes
    ErrorLaw error_law = ErrorLaw::normal;
    Hypothesis hypothesis = Hypothesis::null_h;
    long power_n = 0;  // subset cardinality under power_curve
    long replications = 1000;
    std::uint64_t master_seed = 0;
    double alpha = 0.05;
    bool cd_two_sided = true;

    void validate() const;
};

/// AR(1) path x_t = phi x_{t-1} + v_t, v_t ~ N(0, sigma_v^2), started at 0
/// and advanced burn_in steps before the first kept value. Exposed so the
/// stationary-variance oracle can drive it directly.
std::vector<double> ar1_path(double phi, double sigma_v, long steps,
                             long burn_in, RngStream& stream);

/// Section designs: T x p each, first column ones, slope columns AR(1).
std::vector<Eigen::MatrixXd> gen_regressors(const DgpConfig& cfg,
                                            std::uint32_t replication);

/// N x p coefficient rows (a_i, b_2i, ..., b_pi).
Eigen::MatrixXd gen_coefficients(const DgpConfig& cfg,
                                 std::uint32_t replication);

/// Post-repair correlation matrix R + lambda I of the alternative, with
/// entries over the random subset A. Exposed for construction checks.
Eigen::MatrixXd build_correlation_repaired(const DgpConfig& cfg,
                                           std::uint32_t replication);

/// Sigma = D^{1/2} (R + lambda I) D^{1/2}, D = diag(sigma_i^2).
/// Requires hypothesis != null (DomainError otherwise).
Eigen::MatrixXd build_covariance(const DgpConfig& cfg,
                                 std::uint32_t replication);

/// N x T errors: the null scale mixture, or correlated columns
/// Sigma^{1/2} eta_t under the alternatives.
Eigen::MatrixXd gen_errors(const DgpConfig& cfg, std::uint32_t replication);

/// Correlated errors for a caller-supplied covariance (the alternative
/// path of gen_errors with Sigma fixed; used to check that Sigma = D
/// degenerates to the null construction in distribution).
Eigen::MatrixXd gen_errors_correlated(const DgpConfig& cfg,
                                      std::uint32_t replication,
                                      const Eigen::MatrixXd& sigma);

/// Assembles the full replication: designs, coefficients, errors, response.
PanelDataset make_replication(const DgpConfig& cfg, std::uint32_t replication);

}  // namespace xsdep
