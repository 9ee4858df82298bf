#include "xsdep/distributions.hpp"

#include <cmath>
#include <numbers>

#include "xsdep/errors.hpp"

namespace xsdep {

namespace {

constexpr double kSqrt2 = std::numbers::sqrt2;

// ALGORITHM AS241, APPL. STATIST. (1988) VOL. 37, NO. 3 (Wichura's PPND16).
// Normal deviate for lower tail area p, accurate to about 1e-16 relative.
double as241(double p) {
    const double q = p - 0.5;
    if (std::fabs(q) <= 0.425) {
        const double r = 0.180625 - q * q;
        return q *
               (((((((2.5090809287301226727e+3 * r + 3.3430575583588128105e+4) * r +
                     6.7265770927008700853e+4) * r + 4.5921953931549871457e+4) * r +
                   1.3731693765509461125e+4) * r + 1.9715909503065514427e+3) * r +
                 1.3314166789178437745e+2) * r + 3.3871328727963666080e+0) /
               (((((((5.2264952788528545610e+3 * r + 2.8729085735721942674e+4) * r +
                     3.9307895800092710610e+4) * r + 2.1213794301586595867e+4) * r +
                   5.3941960214247511077e+3) * r + 6.8718700749205790830e+2) * r +
                 4.2313330701600911252e+1) * r + 1.0);
    }
    double r = q < 0.0 ? p : 1.0 - p;
    r = std::sqrt(-std::log(r));
    double z;
    if (r <= 5.0) {
        r -= 1.6;
        z = (((((((7.74545014278341407640e-4 * r + 2.27238449892691845833e-2) * r +
                  2.41780725177450611770e-1) * r + 1.27045825245236838258e+0) * r +
                3.64784832476320460504e+0) * r + 5.76949722146069140550e+0) * r +
              4.63033784615654529590e+0) * r + 1.42343711074968357734e+0) /
            (((((((1.05075007164441684324e-9 * r + 5.47593808499534494600e-4) * r +
                  1.51986665636164571966e-2) * r + 1.48103976427480074590e-1) * r +
                6.89767334985100004550e-1) * r + 1.67638483018380384940e+0) * r +
              2.05319162663775882187e+0) * r + 1.0);
    } else {
        r -= 5.0;
        z = (((((((2.01033439929228813265e-7 * r + 2.71155556874348757815e-5) * r +
                  1.24266094738807843860e-3) * r + 2.65321895265761230930e-2) * r +
                2.96560571828504891230e-1) * r + 1.78482653991729133580e+0) * r +
              5.46378491116411436990e+0) * r + 6.65790464350110377720e+0) /
            (((((((2.04426310338993978564e-15 * r + 1.42151175831644588870e-7) * r +
                  1.84631831751005468180e-5) * r + 7.86869131145613259100e-4) * r +
                1.48753612908506148525e-2) * r + 1.36929880922735805310e-1) * r +
              5.99832206555887937690e-1) * r + 1.0);
    }
    return q < 0.0 ? -z : z;
}

double std_normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / std::sqrt(2.0 * std::numbers::pi);
}

}  // namespace

double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / kSqrt2); }

double std_normal_tail(double x) { return 0.5 * std::erfc(x / kSqrt2); }

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw DomainError("normal quantile needs p in (0,1), got p=" +
                          std::to_string(p));
    double z = as241(p);
    // One Newton step against the erfc-based CDF. Use whichever tail is
    // smaller so the residual is formed without cancellation.
    const double pdf = std_normal_pdf(z);
    if (pdf > 0.0) {
        if (p <= 0.5) {
            z -= (std_normal_cdf(z) - p) / pdf;
        } else {
            z += (std_normal_tail(z) - (1.0 - p)) / pdf;
        }
    }
    return z;
}

// 1/sqrt(8*pi), the scale constant of the max-test limit law.
static const double kMaxLawScale = 1.0 / std::sqrt(8.0 * std::numbers::pi);

double gumbel_cdf(double y) {
    return std::exp(-kMaxLawScale * std::exp(-y / 2.0));
}

double gumbel_tail(double y) {
    return -std::expm1(-kMaxLawScale * std::exp(-y / 2.0));
}

double gumbel_quantile(double alpha) {
    if (!(alpha > 0.0 && alpha < 1.0))
        throw DomainError("gumbel quantile needs alpha in (0,1), got alpha=" +
                          std::to_string(alpha));
    // Solve 1 - F(q) = alpha:  q = -log(8*pi) - 2*log(-log(1-alpha)).
    return -std::log(8.0 * std::numbers::pi) -
           2.0 * std::log(-std::log1p(-alpha));
}

Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& S) {
    if (S.rows() != S.cols())
        throw DimensionError("psd_sqrt needs a square matrix, got " +
                             std::to_string(S.rows()) + "x" +
                             std::to_string(S.cols()));
    const double scale = S.cwiseAbs().maxCoeff();
    const double asym = (S - S.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-12 * std::max(scale, 1.0))
        throw SymmetryError("psd_sqrt input is asymmetric (max deviation " +
                            std::to_string(asym) + ")");

    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(S);
    Eigen::VectorXd lam = eig.eigenvalues();
    const double norm = lam.cwiseAbs().maxCoeff();
    const double floor = -1e-10 * std::max(norm, 1.0);
    for (Eigen::Index i = 0; i < lam.size(); ++i) {
        if (lam[i] < floor)
            throw NotPsdError("matrix has eigenvalue " + std::to_string(lam[i]) +
                              " below the PSD tolerance");
        if (lam[i] < 0.0) lam[i] = 0.0;
    }
    return eig.eigenvectors() * lam.cwiseSqrt().asDiagonal() *
           eig.eigenvectors().transpose();
}

}  // namespace xsdep
