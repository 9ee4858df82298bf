#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <utility>

#include "xsdep/ols.hpp"
#include "xsdep/panel.hpp"

namespace xsdep {

/// Dot product by recursive halving (pairwise summation), so the rounding
/// error grows like O(log T) instead of O(T). The sum-type statistics
/// aggregate O(N^2) of these, which is why plain accumulation is not used.
double pairwise_dot(const double* a, const double* b, long n);

/// Pairwise correlation matrix.
///
/// kind tags what the correlations were computed from:
///   residual        - OLS residuals (the rho-hat of the tests)
///   raw_noncentered - rows normalized without centering, e_i'e_j
///   pearson         - textbook Pearson on mean-centered rows
/// fingerprint identifies the underlying data so outcomes computed on
/// different inputs cannot be combined silently.
struct CorrMatrix {
    enum class Kind { residual, raw_noncentered, pearson };

    Eigen::MatrixXd rho;  // N x N, unit diagonal
    Kind kind = Kind::residual;
    std::uint64_t fingerprint = 0;
    long n_regressors = 0;  // p projected out upstream; 0 for raw kinds
};

/// rho_ij = sum_t e_it e_jt / sqrt(sum_t e_it^2 * sum_t e_jt^2).
/// A residual row with zero norm throws DegenerateResidualError.
CorrMatrix residual_corr(const ResidualSet& res);

/// Correlations of the raw response rows: un-centered (first) and Pearson
/// (second). A constant row throws DegenerateResidualError for the Pearson
/// variant; an all-zero row throws for both.
std::pair<CorrMatrix, CorrMatrix> raw_corr_variants(const PanelDataset& data);

/// Scalar summaries over the strict upper triangle.
struct CorrSummary {
    double max_abs = 0.0;        // L_N
    long argmax_i = -1;          // lexicographically first maximizing pair
    long argmax_j = -1;
    double sum_sq_scaled = 0.0;  // S_N = sum_{i<j} T rho_ij^2
};

/// Needs N >= 2 (DimensionError otherwise). T scales the squared sum.
CorrSummary summarize(const CorrMatrix& corr, long T);

}  // namespace xsdep
