#include "xsdep/dgp.hpp"

#include <algorithm>
#include <cmath>

#include "xsdep/distributions.hpp"
#include "xsdep/errors.hpp"

namespace xsdep {

const char* error_law_name(ErrorLaw law) {
    switch (law) {
        case ErrorLaw::normal: return "normal";
        case ErrorLaw::t6: return "t6";
        case ErrorLaw::chi5: return "chi5";
    }
    return "?";
}

ErrorLaw error_law_from_name(const std::string& name) {
    if (name == "normal") return ErrorLaw::normal;
    if (name == "t6") return ErrorLaw::t6;
    if (name == "chi5") return ErrorLaw::chi5;
    throw DomainError("unknown error law \"" + name +
                      "\"; expected normal, t6, or chi5");
}

const char* hypothesis_name(Hypothesis h) {
    switch (h) {
        case Hypothesis::null_h: return "null";
        case Hypothesis::nonsparse: return "nonsparse";
        case Hypothesis::sparse: return "sparse";
        case Hypothesis::power_curve: return "power-curve";
    }
    return "?";
}

Hypothesis hypothesis_from_name(const std::string& name) {
    if (name == "null") return Hypothesis::null_h;
    if (name == "nonsparse") return Hypothesis::nonsparse;
    if (name == "sparse") return Hypothesis::sparse;
    if (name == "power-curve" || name == "power_curve")
        return Hypothesis::power_curve;
    throw DomainError("unknown hypothesis \"" + name +
                      "\"; expected null, nonsparse, sparse, or power-curve");
}

void DgpConfig::validate() const {
    if (N < 3) throw DimensionError("simulation needs N >= 3");
    if (p < 1)
        throw DimensionError(
            "the simulated design needs p >= 1 (intercept plus p-1 slopes)");
    if (T <= p) throw DimensionError("simulation needs T > p");
    if (replications < 1) throw DomainError("replications must be >= 1");
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("alpha must lie in (0,1)");
    if (hypothesis == Hypothesis::power_curve && power_n < 2)
        throw DomainError(
            "power-curve cardinality n must be >= 2 (log n must be positive)");
}

namespace {

DistSpec law_spec(ErrorLaw law) {
    switch (law) {
        case ErrorLaw::normal: return DistSpec::std_normal();
        case ErrorLaw::t6: return DistSpec::t6_norm();
        case ErrorLaw::chi5: return DistSpec::chi5_norm();
    }
    return DistSpec::std_normal();
}

// sigma_i^2 ~ (p/2) chi^2_2, one draw per section.
Eigen::VectorXd draw_sigma_sq(const DgpConfig& cfg, std::uint32_t replication) {
    RngStream stream(cfg.master_seed, replication, StreamPurpose::error_scale);
    Eigen::VectorXd s2(cfg.N);
    for (long i = 0; i < cfg.N; ++i)
        s2(i) = 0.5 * static_cast<double>(cfg.p) * stream.chi_square(2);
    return s2;
}

}  // namespace

std::vector<double> ar1_path(double phi, double sigma_v, long steps,
                             long burn_in, RngStream& stream) {
    std::vector<double> out(static_cast<std::size_t>(steps));
    double x = 0.0;
    for (long k = 0; k < burn_in; ++k) x = phi * x + sigma_v * stream.normal();
    for (long t = 0; t < steps; ++t) {
        x = phi * x + sigma_v * stream.normal();
        out[static_cast<std::size_t>(t)] = x;
    }
    return out;
}

std::vector<Eigen::MatrixXd> gen_regressors(const DgpConfig& cfg,
                                            std::uint32_t replication) {
    cfg.validate();
    RngStream scale(cfg.master_seed, replication,
                    StreamPurpose::regressor_scale);
    RngStream noise(cfg.master_seed, replication,
                    StreamPurpose::regressor_noise);

    std::vector<Eigen::MatrixXd> designs(cfg.N,
                                         Eigen::MatrixXd(cfg.T, cfg.p));
    for (long i = 0; i < cfg.N; ++i) {
        designs[i].col(0).setOnes();
        for (long l = 1; l < cfg.p; ++l) {
            const double zeta_sq = scale.chi_square(6) / 6.0;
            // innovation variance zeta^2 / (1 - 0.6^2)
            const double sigma_v = std::sqrt(zeta_sq / 0.64);
            const auto path = ar1_path(0.6, sigma_v, cfg.T, 51, noise);
            for (long t = 0; t < cfg.T; ++t) designs[i](t, l) = path[t];
        }
    }
    return designs;
}

Eigen::MatrixXd gen_coefficients(const DgpConfig& cfg,
                                 std::uint32_t replication) {
    cfg.validate();
    RngStream stream(cfg.master_seed, replication, StreamPurpose::coefficients);
    Eigen::MatrixXd coef(cfg.N, cfg.p);
    for (long i = 0; i < cfg.N; ++i) {
        coef(i, 0) = stream.normal();  // intercept alpha_i ~ N(0,1)
        for (long l = 1; l < cfg.p; ++l)
            coef(i, l) = stream.normal(1.0, 0.2);  // beta ~ N(1, 0.04)
    }
    return coef;
}

Eigen::MatrixXd build_correlation_repaired(const DgpConfig& cfg,
                                           std::uint32_t replication) {
    cfg.validate();
    if (cfg.hypothesis == Hypothesis::null_h)
        throw DomainError("the null hypothesis has no correlation structure");

    long card = 0;
    double lo = 0.0, hi = 0.0;
    const double log_n_over_t =
        std::log(static_cast<double>(cfg.N)) / static_cast<double>(cfg.T);
    switch (cfg.hypothesis) {
        case Hypothesis::nonsparse:
            card = static_cast<long>(
                std::floor(std::pow(static_cast<double>(cfg.N), 0.5)));
            lo = std::sqrt(3.0 * log_n_over_t);
            hi = std::sqrt(5.0 * log_n_over_t);
            break;
        case Hypothesis::sparse:
            card = static_cast<long>(
                std::floor(std::pow(static_cast<double>(cfg.N), 0.3)));
            lo = std::sqrt(8.0 * log_n_over_t);
            hi = std::sqrt(10.0 * log_n_over_t);
            break;
        case Hypothesis::power_curve: {
            card = cfg.power_n;
            const double c = 1.0 / std::log(static_cast<double>(cfg.power_n));
            lo = std::sqrt(8.0 * c * log_n_over_t);
            hi = std::sqrt(10.0 * c * log_n_over_t);
            break;
        }
        case Hypothesis::null_h:
            break;
    }
    card = std::max<long>(card, 2);
    card = std::min<long>(card, cfg.N);

    // Random subset A of `card` sections: partial Fisher-Yates.
    RngStream subset(cfg.master_seed, replication,
                     StreamPurpose::covariance_subset);
    std::vector<long> pool(cfg.N);
    for (long i = 0; i < cfg.N; ++i) pool[i] = i;
    for (long k = 0; k < card; ++k) {
        const long j =
            k + static_cast<long>(subset.uniform() * (cfg.N - k));
        std::swap(pool[k], pool[std::min(j, cfg.N - 1)]);
    }
    std::vector<long> members(pool.begin(), pool.begin() + card);
    std::sort(members.begin(), members.end());

    RngStream rho_stream(cfg.master_seed, replication,
                         StreamPurpose::covariance_rho);
    Eigen::MatrixXd R = Eigen::MatrixXd::Identity(cfg.N, cfg.N);
    for (std::size_t u = 0; u < members.size(); ++u)
        for (std::size_t v = u + 1; v < members.size(); ++v) {
            const double rho = rho_stream.uniform(lo, hi);
            R(members[u], members[v]) = R(members[v], members[u]) = rho;
        }

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(R);
    const double lambda = std::fabs(eig.eigenvalues().minCoeff()) + 0.05;
    R += lambda * Eigen::MatrixXd::Identity(cfg.N, cfg.N);
    return R;
}

Eigen::MatrixXd build_covariance(const DgpConfig& cfg,
                                 std::uint32_t replication) {
    const Eigen::MatrixXd R = build_correlation_repaired(cfg, replication);
    const Eigen::VectorXd sigma = draw_sigma_sq(cfg, replication).cwiseSqrt();
    return sigma.asDiagonal() * R * sigma.asDiagonal();
}

Eigen::MatrixXd gen_errors_correlated(const DgpConfig& cfg,
                                      std::uint32_t replication,
                                      const Eigen::MatrixXd& sigma) {
    const Eigen::MatrixXd root = psd_sqrt(sigma);
    RngStream stream(cfg.master_seed, replication, StreamPurpose::errors);
    const DistSpec law = law_spec(cfg.error_law);
    Eigen::MatrixXd eps(cfg.N, cfg.T);
    Eigen::VectorXd eta(cfg.N);
    for (long t = 0; t < cfg.T; ++t) {
        for (long i = 0; i < cfg.N; ++i) eta(i) = sample_one(law, stream);
        eps.col(t) = root * eta;
    }
    return eps;
}

Eigen::MatrixXd gen_errors(const DgpConfig& cfg, std::uint32_t replication) {
    cfg.validate();
    if (cfg.hypothesis == Hypothesis::null_h) {
        const Eigen::VectorXd sigma =
            draw_sigma_sq(cfg, replication).cwiseSqrt();
        RngStream stream(cfg.master_seed, replication, StreamPurpose::errors);
        const DistSpec law = law_spec(cfg.error_law);
        Eigen::MatrixXd eps(cfg.N, cfg.T);
        for (long i = 0; i < cfg.N; ++i)
            for (long t = 0; t < cfg.T; ++t)
                eps(i, t) = sigma(i) * sample_one(law, stream);
        return eps;
    }
    return gen_errors_correlated(cfg, replication,
                                 build_covariance(cfg, replication));
}

PanelDataset make_replication(const DgpConfig& cfg,
                              std::uint32_t replication) {
    PanelDataset data;
    data.n_sections = cfg.N;
    data.n_periods = cfg.T;
    data.n_regressors = cfg.p;
    data.x = gen_regressors(cfg, replication);
    const Eigen::MatrixXd coef = gen_coefficients(cfg, replication);
    const Eigen::MatrixXd eps = gen_errors(cfg, replication);
    data.y.resize(cfg.N, cfg.T);
    for (long i = 0; i < cfg.N; ++i)
        data.y.row(i) = (data.x[i] * coef.row(i).transpose()).transpose() +
                        eps.row(i);
    return data;
}

}  // namespace xsdep
