#include <doctest.h>

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <vector>

#include "xsdep/dgp.hpp"
#include "xsdep/distributions.hpp"
#include "xsdep/errors.hpp"
#include "xsdep/rng.hpp"

using namespace xsdep;

namespace {

double pooled_moment(const Eigen::MatrixXd& m, int order) {
    double acc = 0.0;
    for (long i = 0; i < m.rows(); ++i)
        for (long t = 0; t < m.cols(); ++t)
            acc += std::pow(m(i, t), order);
    return acc / double(m.rows() * m.cols());
}

}  // namespace

TEST_CASE("config names round-trip and reject unknowns") {
    for (ErrorLaw law : {ErrorLaw::normal, ErrorLaw::t6, ErrorLaw::chi5})
        CHECK(error_law_from_name(error_law_name(law)) == law);
    for (Hypothesis h : {Hypothesis::null_h, Hypothesis::nonsparse,
                         Hypothesis::sparse, Hypothesis::power_curve})
        CHECK(hypothesis_from_name(hypothesis_name(h)) == h);
    CHECK(hypothesis_from_name("power_curve") == Hypothesis::power_curve);
    CHECK_THROWS_AS((void)error_law_from_name("cauchy"), DomainError);
    CHECK_THROWS_AS((void)hypothesis_from_name("dense"), DomainError);
}

TEST_CASE("config validation") {
    DgpConfig cfg;
    CHECK_NOTHROW(cfg.validate());

    DgpConfig bad = cfg;
    bad.N = 2;
    CHECK_THROWS_AS(bad.validate(), DimensionError);
    bad = cfg;
    bad.p = 0;
    CHECK_THROWS_AS(bad.validate(), DimensionError);
    bad = cfg;
    bad.T = bad.p;
    CHECK_THROWS_AS(bad.validate(), DimensionError);
    bad = cfg;
    bad.replications = 0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = cfg;
    bad.alpha = 1.0;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad = cfg;
    bad.hypothesis = Hypothesis::power_curve;
    bad.power_n = 1;
    CHECK_THROWS_AS(bad.validate(), DomainError);
    bad.power_n = 2;
    CHECK_NOTHROW(bad.validate());
}

TEST_CASE("ar1 path hits the stationary law") {
    RngStream stream(101, 0, StreamPurpose::generic);
    const long n = 1000000;
    // Innovation sd 1.25 gives stationary variance 1.5625/0.64.
    const auto path = ar1_path(0.6, 1.25, n, 100, stream);

    double mean = 0.0;
    for (double v : path) mean += v;
    mean /= double(n);
    double var = 0.0, lag1 = 0.0;
    for (long t = 0; t < n; ++t) var += (path[t] - mean) * (path[t] - mean);
    var /= double(n);
    for (long t = 1; t < n; ++t)
        lag1 += (path[t] - mean) * (path[t - 1] - mean);
    lag1 /= (double(n - 1) * var);

    CHECK(std::abs(mean) < 0.015);
    CHECK(var == doctest::Approx(2.44140625).epsilon(0.02));
    CHECK(lag1 == doctest::Approx(0.6).epsilon(0.017));
}

TEST_CASE("regressors: intercept column plus AR(1) slopes") {
    DgpConfig cfg;
    cfg.N = 500;
    cfg.T = 200;
    cfg.p = 2;
    cfg.master_seed = 102;
    const auto designs = gen_regressors(cfg, 0);
    REQUIRE(designs.size() == 500);
    for (const auto& x : designs) {
        REQUIRE(x.rows() == 200);
        REQUIRE(x.cols() == 2);
        CHECK((x.col(0).array() == 1.0).all());
    }

    // Pooled slope-column variance should match the averaged stationary
    // variance E[zeta^2] / 0.64^2 = 1 / 0.4096, and the pooled lag-1
    // autocorrelation should sit at the AR coefficient.
    double var = 0.0, lag1 = 0.0;
    for (const auto& x : designs) {
        const Eigen::VectorXd c = x.col(1);
        const double mu = c.mean();
        double v = 0.0, l = 0.0;
        for (long t = 0; t < 200; ++t) v += (c(t) - mu) * (c(t) - mu);
        for (long t = 1; t < 200; ++t) l += (c(t) - mu) * (c(t - 1) - mu);
        var += v / 200.0;
        lag1 += (l / 199.0) / (v / 200.0);
    }
    var /= 500.0;
    lag1 /= 500.0;
    CHECK(var == doctest::Approx(1.0 / 0.4096).epsilon(0.12));
    // Per-section lag-1 estimates carry an O(1/T) downward bias, hence the
    // wider window on the low side.
    CHECK(lag1 > 0.55);
    CHECK(lag1 < 0.63);

    // p = 1 means intercept only.
    cfg.p = 1;
    const auto bare = gen_regressors(cfg, 0);
    CHECK(bare[0].cols() == 1);
    CHECK((bare[0].col(0).array() == 1.0).all());
}

TEST_CASE("coefficient draws: intercepts N(0,1), slopes N(1, 0.04)") {
    DgpConfig cfg;
    cfg.N = 50000;
    cfg.T = 10;
    cfg.p = 3;
    cfg.master_seed = 103;
    const Eigen::MatrixXd coef = gen_coefficients(cfg, 0);
    REQUIRE(coef.rows() == 50000);
    REQUIRE(coef.cols() == 3);

    const Eigen::VectorXd a = coef.col(0);
    const double a_mean = a.mean();
    const double a_var =
        (a.array() - a_mean).square().sum() / double(a.size());
    CHECK(std::abs(a_mean) < 0.025);
    CHECK(a_var == doctest::Approx(1.0).epsilon(0.05));

    std::vector<double> slopes;
    for (long l = 1; l < 3; ++l)
        for (long i = 0; i < 50000; ++i) slopes.push_back(coef(i, l));
    double s_mean = 0.0;
    for (double v : slopes) s_mean += v;
    s_mean /= double(slopes.size());
    double s_var = 0.0;
    for (double v : slopes) s_var += (v - s_mean) * (v - s_mean);
    s_var /= double(slopes.size());
    CHECK(s_mean == doctest::Approx(1.0).epsilon(0.004));
    CHECK(std::abs(s_var - 0.04) < 0.002);
}

TEST_CASE("null errors carry the scale-mixture moments") {
    DgpConfig cfg;
    cfg.N = 1600;
    cfg.T = 64;
    cfg.p = 2;
    cfg.master_seed = 104;

    // sigma_i^2 ~ (p/2) chi^2_2 with p = 2: E e^2 = 2, and for normal
    // innovations E e^4 = E sigma^4 * 3 = 8 * 3 = 24 (kurtosis 6).
    cfg.error_law = ErrorLaw::normal;
    const Eigen::MatrixXd en = gen_errors(cfg, 0);
    CHECK(std::abs(pooled_moment(en, 1)) < 0.05);
    CHECK(pooled_moment(en, 2) == doctest::Approx(2.0).epsilon(0.125));
    CHECK(pooled_moment(en, 4) == doctest::Approx(24.0).epsilon(0.25));
    CHECK(std::abs(pooled_moment(en, 3)) < 1.0);

    // The skew-signature of the chi5 law survives the sigma scaling.
    cfg.error_law = ErrorLaw::chi5;
    const Eigen::MatrixXd ec = gen_errors(cfg, 0);
    CHECK(pooled_moment(ec, 2) == doctest::Approx(2.0).epsilon(0.125));
    CHECK(pooled_moment(ec, 3) > 2.0);

    // t6 keeps unit variance before scaling.
    cfg.error_law = ErrorLaw::t6;
    const Eigen::MatrixXd et = gen_errors(cfg, 0);
    CHECK(pooled_moment(et, 2) == doctest::Approx(2.0).epsilon(0.125));

    // The three laws route to genuinely different draws.
    CHECK((en - et).cwiseAbs().maxCoeff() > 0.01);
    CHECK((en - ec).cwiseAbs().maxCoeff() > 0.01);
}

TEST_CASE("repaired correlation: cardinality, interval, ridge") {
    DgpConfig cfg;
    cfg.N = 100;
    cfg.T = 100;
    cfg.p = 2;
    cfg.master_seed = 105;

    struct Expect {
        Hypothesis h;
        long power_n;
        long card;
        double lo_mult, hi_mult, c;
    };
    const double log_n_over_t = std::log(100.0) / 100.0;
    const std::vector<Expect> table = {
        {Hypothesis::nonsparse, 0, 10, 3.0, 5.0, 1.0},
        {Hypothesis::sparse, 0, 3, 8.0, 10.0, 1.0},
        {Hypothesis::power_curve, 8, 8, 8.0, 10.0, 1.0 / std::log(8.0)},
    };
    for (const auto& e : table) {
        CAPTURE(hypothesis_name(e.h));
        cfg.hypothesis = e.h;
        cfg.power_n = e.power_n;
        const Eigen::MatrixXd R = build_correlation_repaired(cfg, 0);
        REQUIRE(R.rows() == 100);
        REQUIRE(R.cols() == 100);
        CHECK((R - R.transpose()).cwiseAbs().maxCoeff() == 0.0);

        // Constant diagonal 1 + lambda with lambda >= 0.05.
        const double lambda = R(0, 0) - 1.0;
        CHECK(lambda >= 0.05 - 1e-12);
        for (long i = 0; i < 100; ++i) CHECK(R(i, i) == R(0, 0));

        // Count sections touched by nonzero off-diagonals, and check every
        // off-diagonal entry sits inside the draw interval.
        const double lo = std::sqrt(e.lo_mult * e.c * log_n_over_t);
        const double hi = std::sqrt(e.hi_mult * e.c * log_n_over_t);
        std::vector<long> touched;
        for (long i = 0; i < 100; ++i) {
            bool any = false;
            for (long j = 0; j < 100; ++j) {
                if (i == j) continue;
                const double r = R(i, j);
                if (r != 0.0) {
                    any = true;
                    CHECK(r >= lo - 1e-12);
                    CHECK(r <= hi + 1e-12);
                }
            }
            if (any) touched.push_back(i);
        }
        CHECK(long(touched.size()) == e.card);

        // The block over A is complete: card*(card-1) nonzero off-diags.
        long nnz = 0;
        for (long i = 0; i < 100; ++i)
            for (long j = 0; j < 100; ++j)
                if (i != j && R(i, j) != 0.0) ++nnz;
        CHECK(nnz == e.card * (e.card - 1));

        // Ridge repair leaves the smallest eigenvalue at or above 0.05.
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(R);
        CHECK(eig.eigenvalues().minCoeff() >= 0.05 - 1e-10);
    }
}

TEST_CASE("repaired correlation corner cases") {
    DgpConfig cfg;
    cfg.N = 3;
    cfg.T = 10;
    cfg.p = 2;
    cfg.hypothesis = Hypothesis::sparse;
    cfg.master_seed = 106;
    // floor(3^0.3) = 1 is clamped to the minimum cardinality 2.
    const Eigen::MatrixXd R = build_correlation_repaired(cfg, 0);
    long touched = 0;
    for (long i = 0; i < 3; ++i) {
        bool any = false;
        for (long j = 0; j < 3; ++j)
            if (i != j && R(i, j) != 0.0) any = true;
        touched += any ? 1 : 0;
    }
    CHECK(touched == 2);

    cfg.hypothesis = Hypothesis::null_h;
    CHECK_THROWS_AS((void)build_correlation_repaired(cfg, 0), DomainError);
    CHECK_THROWS_AS((void)build_covariance(cfg, 0), DomainError);
}

TEST_CASE("subset and draws are redrawn per replication, fixed per seed") {
    DgpConfig cfg;
    cfg.N = 100;
    cfg.T = 100;
    cfg.p = 2;
    cfg.hypothesis = Hypothesis::sparse;
    cfg.master_seed = 107;

    const Eigen::MatrixXd r0 = build_correlation_repaired(cfg, 0);
    const Eigen::MatrixXd r0_again = build_correlation_repaired(cfg, 0);
    const Eigen::MatrixXd r1 = build_correlation_repaired(cfg, 1);
    CHECK((r0.array() == r0_again.array()).all());
    CHECK((r0 - r1).cwiseAbs().maxCoeff() > 0.0);
}

TEST_CASE("covariance assembles the exposed pieces") {
    DgpConfig cfg;
    cfg.N = 40;
    cfg.T = 60;
    cfg.p = 3;
    cfg.hypothesis = Hypothesis::nonsparse;
    cfg.master_seed = 108;

    const Eigen::MatrixXd sigma = build_covariance(cfg, 5);
    const Eigen::MatrixXd R = build_correlation_repaired(cfg, 5);

    // Rebuild D from the documented stream: sigma_i^2 ~ (p/2) chi^2_2 on
    // the error-scale stream of this replication.
    RngStream stream(cfg.master_seed, 5, StreamPurpose::error_scale);
    Eigen::VectorXd d(cfg.N);
    for (long i = 0; i < cfg.N; ++i) d(i) = 1.5 * stream.chi_square(2);
    const Eigen::VectorXd root = d.cwiseSqrt();

    for (long i = 0; i < cfg.N; ++i)
        for (long j = 0; j < cfg.N; ++j)
            CHECK(sigma(i, j) ==
                  doctest::Approx(root(i) * R(i, j) * root(j))
                      .epsilon(1e-12));
}

TEST_CASE("diagonal covariance degenerates to independent scaled draws") {
    DgpConfig cfg;
    cfg.N = 200;
    cfg.T = 500;
    cfg.p = 2;
    cfg.error_law = ErrorLaw::normal;
    cfg.master_seed = 109;

    RngStream scales(cfg.master_seed, 77, StreamPurpose::generic);
    Eigen::VectorXd d(cfg.N);
    for (long i = 0; i < cfg.N; ++i) d(i) = scales.uniform(0.5, 2.5);
    Eigen::MatrixXd diag = Eigen::MatrixXd::Zero(cfg.N, cfg.N);
    for (long i = 0; i < cfg.N; ++i) diag(i, i) = d(i);

    const Eigen::MatrixXd eps = gen_errors_correlated(cfg, 0, diag);
    REQUIRE(eps.rows() == 200);
    REQUIRE(eps.cols() == 500);

    // Per-row variances track the supplied diagonal on average.
    double ratio = 0.0;
    for (long i = 0; i < cfg.N; ++i) {
        const double mu = eps.row(i).mean();
        const double v =
            (eps.row(i).array() - mu).square().sum() / double(cfg.T);
        ratio += v / d(i);
    }
    ratio /= double(cfg.N);
    CHECK(ratio == doctest::Approx(1.0).epsilon(0.02));

    // Standardized entries are iid standard normal: one-sample KS.
    std::vector<double> z;
    z.reserve(200 * 500);
    for (long i = 0; i < cfg.N; ++i)
        for (long t = 0; t < cfg.T; ++t)
            z.push_back(eps(i, t) / std::sqrt(d(i)));
    std::sort(z.begin(), z.end());
    double ks = 0.0;
    const double n = double(z.size());
    for (std::size_t k = 0; k < z.size(); ++k) {
        const double f = std_normal_cdf(z[k]);
        ks = std::max(ks, std::abs(f - double(k) / n));
        ks = std::max(ks, std::abs(double(k + 1) / n - f));
    }
    CHECK(ks < 0.008);
}

TEST_CASE("full replication assembles y = x beta + errors") {
    DgpConfig cfg;
    cfg.N = 20;
    cfg.T = 30;
    cfg.p = 2;
    cfg.hypothesis = Hypothesis::nonsparse;
    cfg.master_seed = 110;

    const PanelDataset data = make_replication(cfg, 3);
    CHECK_NOTHROW(data.validate());
    CHECK(data.n_sections == 20);
    CHECK(data.n_periods == 30);
    CHECK(data.n_regressors == 2);

    // Reassemble from the exposed pieces.
    const auto x = gen_regressors(cfg, 3);
    const Eigen::MatrixXd coef = gen_coefficients(cfg, 3);
    const Eigen::MatrixXd eps = gen_errors(cfg, 3);
    for (long i = 0; i < 20; ++i)
        for (long t = 0; t < 30; ++t) {
            const double fitted = x[i].row(t).dot(coef.row(i));
            CHECK(data.y(i, t) ==
                  doctest::Approx(fitted + eps(i, t)).epsilon(1e-12));
        }

    // Replication determinism and separation.
    const PanelDataset again = make_replication(cfg, 3);
    CHECK((data.y.array() == again.y.array()).all());
    const PanelDataset other = make_replication(cfg, 4);
    CHECK((data.y - other.y).cwiseAbs().maxCoeff() > 0.0);
}
