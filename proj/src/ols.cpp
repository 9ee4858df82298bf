#include "xsdep/ols.hpp"

#include "xsdep/errors.hpp"

namespace xsdep {

ResidualSet ols_residuals(const PanelDataset& data) {
    data.validate();
    const long N = data.n_sections;
    const long T = data.n_periods;
    const long p = data.n_regressors;

    ResidualSet res;
    res.n_sections = N;
    res.n_periods = T;
    res.n_regressors = p;
    res.residuals.resize(N, T);
    res.beta_hat.resize(N, p);
    res.q_factors.assign(N, Eigen::MatrixXd(T, p));

    if (p == 0) {
        res.residuals = data.y;
        return res;
    }

    for (long i = 0; i < N; ++i) {
        Eigen::JacobiSVD<Eigen::MatrixXd> svd(
            data.x[i], Eigen::ComputeThinU | Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        const double smax = sv(0);
        if (!(smax > 0.0) || sv(p - 1) <= 1e-10 * smax)
            throw SingularDesignError(
                "design of section " + std::to_string(i) +
                    " is rank deficient (singular value ratio " +
                    std::to_string(smax > 0.0 ? sv(p - 1) / smax : 0.0) + ")",
                i);
        const Eigen::VectorXd yi = data.y.row(i).transpose();
        const Eigen::VectorXd beta = svd.solve(yi);
        res.beta_hat.row(i) = beta.transpose();
        res.residuals.row(i) = (yi - data.x[i] * beta).transpose();
        res.q_factors[i] = svd.matrixU();
    }
    return res;
}

}  // namespace xsdep
