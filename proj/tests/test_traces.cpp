#include <doctest.h>

#include <Eigen/Dense>
#include <cmath>

#include "xsdep/oracle.hpp"
#include "xsdep/ols.hpp"
#include "xsdep/panel.hpp"
#include "xsdep/rng.hpp"
#include "xsdep/traces.hpp"

using namespace xsdep;

namespace {

PanelDataset panel_with_designs(std::vector<Eigen::MatrixXd> x, long T) {
    PanelDataset d;
    d.n_sections = static_cast<long>(x.size());
    d.n_periods = T;
    d.n_regressors = x.empty() ? 0 : x[0].cols();
    d.x = std::move(x);
    d.y = Eigen::MatrixXd::Random(d.n_sections, T);
    return d;
}

PanelDataset random_design_panel(long N, long T, long p, std::uint64_t seed) {
    RngStream s(seed, 0, StreamPurpose::generic);
    std::vector<Eigen::MatrixXd> x(N, Eigen::MatrixXd(T, p));
    for (long i = 0; i < N; ++i)
        for (long c = 0; c < p; ++c)
            for (long t = 0; t < T; ++t) x[i](t, c) = s.normal();
    return panel_with_designs(std::move(x), T);
}

}  // namespace

TEST_CASE("p = 0 gives tr(P_iP_j) = tr((P_iP_j)^2) = T everywhere") {
    const PanelDataset d = random_design_panel(4, 9, 0, 31);
    const PairTraceTable t = pair_traces(ols_residuals(d));
    CHECK(t.m == 9);
    for (long i = 0; i < 4; ++i)
        for (long j = 0; j < 4; ++j) {
            CHECK(t.trace_pp(i, j) == 9.0);
            CHECK(t.trace_ppsq(i, j) == 9.0);
        }
}

TEST_CASE("diagonal entries equal the residual degrees of freedom") {
    const PanelDataset d = random_design_panel(3, 12, 4, 32);
    const PairTraceTable t = pair_traces(ols_residuals(d));
    CHECK(t.m == 8);
    for (long i = 0; i < 3; ++i) {
        CHECK(t.trace_pp(i, i) == doctest::Approx(8.0).epsilon(1e-12));
        CHECK(t.trace_ppsq(i, i) == doctest::Approx(8.0).epsilon(1e-12));
    }
}

TEST_CASE("identical designs give T - p off the diagonal") {
    RngStream s(33, 0, StreamPurpose::generic);
    Eigen::MatrixXd x(10, 3);
    for (long c = 0; c < 3; ++c)
        for (long t = 0; t < 10; ++t) x(t, c) = s.normal();
    const PanelDataset d = panel_with_designs({x, x, x}, 10);
    const PairTraceTable t = pair_traces(ols_residuals(d));
    for (long i = 0; i < 3; ++i)
        for (long j = 0; j < 3; ++j) {
            // P_iP_j = P_1 is idempotent here, so both traces are T - p.
            CHECK(t.trace_pp(i, j) == doctest::Approx(7.0).epsilon(1e-10));
            CHECK(t.trace_ppsq(i, j) == doctest::Approx(7.0).epsilon(1e-10));
        }
}

TEST_CASE("block-orthogonal designs with T = Np give T - 2p") {
    const long N = 4, p = 2, T = N * p;
    std::vector<Eigen::MatrixXd> x(N, Eigen::MatrixXd::Zero(T, p));
    for (long i = 0; i < N; ++i) {
        x[i](i * p, 0) = 1.0;
        x[i](i * p + 1, 1) = 1.0;
    }
    const PanelDataset d = panel_with_designs(std::move(x), T);
    const PairTraceTable t = pair_traces(ols_residuals(d));
    for (long i = 0; i < N; ++i)
        for (long j = 0; j < N; ++j) {
            if (i == j) continue;
            CHECK(t.trace_pp(i, j) ==
                  doctest::Approx(double(T - 2 * p)).epsilon(1e-12));
            CHECK(t.trace_ppsq(i, j) ==
                  doctest::Approx(double(T - 2 * p)).epsilon(1e-12));
        }
}

TEST_CASE("compact identities agree with the dense T x T oracle") {
    const PanelDataset d = random_design_panel(5, 20, 3, 34);
    const ResidualSet r = ols_residuals(d);
    const PairTraceTable fast = pair_traces(r);
    const PairTraceTable dense = trace_brute_force(r);
    for (long i = 0; i < 5; ++i)
        for (long j = 0; j < 5; ++j) {
            CHECK(fast.trace_pp(i, j) ==
                  doctest::Approx(dense.trace_pp(i, j)).epsilon(1e-8));
            CHECK(fast.trace_ppsq(i, j) ==
                  doctest::Approx(dense.trace_ppsq(i, j)).epsilon(1e-8));
        }
}

TEST_CASE("trace bounds hold across random instances") {
    for (std::uint64_t seed = 40; seed < 48; ++seed) {
        const long T = 15, p = 3;
        const PanelDataset d = random_design_panel(4, T, p, seed);
        const PairTraceTable t = pair_traces(ols_residuals(d));
        const double m = double(T - p);
        for (long i = 0; i < 4; ++i)
            for (long j = i + 1; j < 4; ++j) {
                const double pp = t.trace_pp(i, j);
                const double ppsq = t.trace_ppsq(i, j);
                CHECK(pp >= T - 2 * p - 1e-9);
                CHECK(pp <= m + 1e-9);
                CHECK(std::abs(pp - T) <= 2 * p + 1e-9);
                // tr(A^2) <= tr(A)... for A = P_iP_j with eigenvalues in
                // [0,1]; and Cauchy-Schwarz gives tr(A)^2/m <= tr(A^2).
                CHECK(ppsq <= pp + 1e-9);
                CHECK(ppsq >= pp * pp / m - 1e-9);
            }
    }
}
