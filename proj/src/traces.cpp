#include "xsdep/traces.hpp"

#include "xsdep/errors.hpp"

namespace xsdep {

PairTraceTable pair_traces(const ResidualSet& res) {
    const long N = res.n_sections;
    const long T = res.n_periods;
    const long p = res.n_regressors;
    if (N < 1 || T <= p)
        throw DimensionError("pair_traces needs N >= 1 and T > p");

    PairTraceTable table;
    table.m = T - p;
    table.trace_pp.setConstant(N, N, static_cast<double>(table.m));
    table.trace_ppsq.setConstant(N, N, static_cast<double>(table.m));
    if (p == 0) {
        // P_i = I_T for every section.
        table.trace_pp.setConstant(N, N, static_cast<double>(T));
        table.trace_ppsq.setConstant(N, N, static_cast<double>(T));
        return table;
    }

    const double base = static_cast<double>(T - 2 * p);
    for (long i = 0; i < N; ++i) {
        for (long j = i + 1; j < N; ++j) {
            const Eigen::MatrixXd G =
                res.q_factors[i].transpose() * res.q_factors[j];
            const double pp = base + G.squaredNorm();
            const Eigen::MatrixXd GGt = G * G.transpose();
            const double ppsq = base + GGt.squaredNorm();
            table.trace_pp(i, j) = table.trace_pp(j, i) = pp;
            table.trace_ppsq(i, j) = table.trace_ppsq(j, i) = ppsq;
        }
    }
    return table;
}

}  // namespace xsdep
