#include "xsdep/correlation.hpp"

#include <cmath>
#include <cstring>

#include "xsdep/errors.hpp"

namespace xsdep {

double pairwise_dot(const double* a, const double* b, long n) {
    if (n <= 32) {
        double s = 0.0;
        for (long k = 0; k < n; ++k) s += a[k] * b[k];
        return s;
    }
    const long h = n / 2;
    return pairwise_dot(a, b, h) + pairwise_dot(a + h, b + h, n - h);
}

namespace {

// FNV-1a over the upper-triangle bit patterns; identifies the data a
// correlation matrix came from (used by the max-sum combiner).
std::uint64_t fingerprint_rho(const Eigen::MatrixXd& rho,
                              CorrMatrix::Kind kind) {
    std::uint64_t h = 14695981039346656037ull;
    auto mix = [&h](std::uint64_t v) {
        for (int byte = 0; byte < 8; ++byte) {
            h ^= (v >> (8 * byte)) & 0xffu;
            h *= 1099511628211ull;
        }
    };
    const long N = rho.rows();
    mix(static_cast<std::uint64_t>(N));
    mix(static_cast<std::uint64_t>(kind));
    for (long i = 0; i < N; ++i)
        for (long j = i + 1; j < N; ++j) {
            std::uint64_t bits;
            const double v = rho(i, j);
            std::memcpy(&bits, &v, sizeof bits);
            mix(bits);
        }
    return h;
}

// Builds the correlation matrix of the rows of `rows` (stored here as the
// T x N transpose so each section is a contiguous column).
Eigen::MatrixXd corr_of_columns(const Eigen::MatrixXd& cols,
                                CorrMatrix::Kind kind) {
    const long N = cols.cols();
    const long T = cols.rows();
    Eigen::VectorXd norms(N);
    for (long i = 0; i < N; ++i) {
        const double ss = pairwise_dot(cols.col(i).data(), cols.col(i).data(), T);
        if (!(ss > 0.0))
            throw DegenerateResidualError(
                kind == CorrMatrix::Kind::pearson
                    ? "section " + std::to_string(i) +
                          " is constant; Pearson correlation undefined"
                    : "section " + std::to_string(i) +
                          " has zero norm; correlation undefined",
                i);
        norms(i) = std::sqrt(ss);
    }
    Eigen::MatrixXd rho = Eigen::MatrixXd::Identity(N, N);
    for (long i = 0; i < N; ++i)
        for (long j = i + 1; j < N; ++j) {
            const double d =
                pairwise_dot(cols.col(i).data(), cols.col(j).data(), T);
            double r = d / (norms(i) * norms(j));
            if (r > 1.0) r = 1.0;
            if (r < -1.0) r = -1.0;
            rho(i, j) = rho(j, i) = r;
        }
    return rho;
}

}  // namespace

CorrMatrix residual_corr(const ResidualSet& res) {
    CorrMatrix corr;
    corr.kind = CorrMatrix::Kind::residual;
    corr.rho = corr_of_columns(res.residuals.transpose(), corr.kind);
    corr.fingerprint = fingerprint_rho(corr.rho, corr.kind);
    corr.n_regressors = res.n_regressors;
    return corr;
}

std::pair<CorrMatrix, CorrMatrix> raw_corr_variants(const PanelDataset& data) {
    if (data.n_periods < 2)
        throw DimensionError("raw correlations need T >= 2");
    const Eigen::MatrixXd cols = data.y.transpose();  // T x N

    CorrMatrix raw;
    raw.kind = CorrMatrix::Kind::raw_noncentered;
    raw.rho = corr_of_columns(cols, raw.kind);
    raw.fingerprint = fingerprint_rho(raw.rho, raw.kind);

    Eigen::MatrixXd centered = cols;
    centered.rowwise() -= cols.colwise().mean();

    CorrMatrix pearson;
    pearson.kind = CorrMatrix::Kind::pearson;
    pearson.rho = corr_of_columns(centered, pearson.kind);
    pearson.fingerprint = fingerprint_rho(pearson.rho, pearson.kind);

    return {std::move(raw), std::move(pearson)};
}

CorrSummary summarize(const CorrMatrix& corr, long T) {
    const long N = corr.rho.rows();
    if (N < 2) throw DimensionError("summaries need N >= 2 sections");
    CorrSummary s;
    // Kahan-compensated accumulation; the sum has O(N^2) terms.
    double sum_sq = 0.0, comp = 0.0;
    for (long i = 0; i < N; ++i)
        for (long j = i + 1; j < N; ++j) {
            const double r = corr.rho(i, j);
            const double term = r * r - comp;
            const double next = sum_sq + term;
            comp = (next - sum_sq) - term;
            sum_sq = next;
            if (std::fabs(r) > s.max_abs) {
                s.max_abs = std::fabs(r);
                s.argmax_i = i;
                s.argmax_j = j;
            }
        }
    s.sum_sq_scaled = static_cast<double>(T) * sum_sq;
    return s;
}

}  // namespace xsdep
