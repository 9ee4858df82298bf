#pragma once

#include <Eigen/Dense>
#include <vector>

#include "xsdep/panel.hpp"

namespace xsdep {

/// Per-section OLS output.
///
/// residuals row i holds e_i = y_i - x_i * beta_i. q_factors[i] is a thin
/// orthonormal basis Q_i of section i's design column space, so the
/// projector onto the design is A_i = Q_i Q_i' and the residual maker is
/// P_i = I - A_i. With p = 0 the residuals are y itself and Q_i is T x 0.
struct ResidualSet {
    long n_sections = 0;
    long n_periods = 0;
    long n_regressors = 0;

    Eigen::MatrixXd residuals;              // N x T
    Eigen::MatrixXd beta_hat;               // N x p
    std::vector<Eigen::MatrixXd> q_factors; // N matrices, each T x p
};

/// Runs OLS section by section via a singular value decomposition of each
/// design. A design whose smallest singular value falls below
/// 1e-10 x (largest singular value) throws SingularDesignError.
ResidualSet ols_residuals(const PanelDataset& data);

}  // namespace xsdep
