#pragma once

#include <Eigen/Dense>

#include "xsdep/ols.hpp"

namespace xsdep {

/// Traces of products of residual-maker projections P_i = I - Q_i Q_i'.
///
/// trace_pp(i,j)  = tr(P_i P_j)
/// trace_ppsq(i,j) = tr((P_i P_j)^2)
/// m = T - p, the residual degrees of freedom (= diagonal of trace_pp).
struct PairTraceTable {
    Eigen::MatrixXd trace_pp;
    Eigen::MatrixXd trace_ppsq;
    long m = 0;
};

/// Fills the table through p x p Gram algebra: with G = Q_i'Q_j,
///   tr(P_i P_j)     = T - 2p + ||G||_F^2
///   tr((P_i P_j)^2) = T - 2p + ||G G'||_F^2
/// Both follow from expanding P_i P_j = I - A_i - A_j + A_i A_j with
/// idempotent A_i = Q_i Q_i'. Costs O(N^2 (T p^2 + p^3)) instead of the
/// O(N^2 T^3) dense products; the dense oracle lives in the verify module.
PairTraceTable pair_traces(const ResidualSet& res);

}  // namespace xsdep
