#pragma once

#include <Eigen/Dense>

namespace xsdep {

// ============================================================
// Standard normal
// ============================================================

/// Phi(x), computed as 0.5*erfc(-x/sqrt(2)) so the lower tail keeps
/// full relative accuracy.
double std_normal_cdf(double x);

/// 1 - Phi(x) without cancellation: 0.5*erfc(x/sqrt(2)).
double std_normal_tail(double x);

/// Phi^{-1}(p) for p in (0, 1). AS241 rational approximation followed by
/// one Newton step on Phi. Throws DomainError outside (0, 1).
double std_normal_quantile(double p);

// ============================================================
// Limit law of the max statistic
// ============================================================
//
// F(y) = exp(-exp(-y/2) / sqrt(8*pi)), the distribution of
// T*L_N^2 - 4*log(N) + log(log(N)) under the null.

double gumbel_cdf(double y);

/// 1 - F(y), via expm1 so small tail probabilities keep relative accuracy.
double gumbel_tail(double y);

/// Upper-tail quantile: the y with 1 - F(y) = alpha, alpha in (0, 1).
/// Closed form: -log(8*pi) - 2*log(-log(1 - alpha)).
double gumbel_quantile(double alpha);

// ============================================================
// Matrix square root
// ============================================================

/// Symmetric PSD square root via eigendecomposition. Eigenvalues in
/// [-1e-10*||S||, 0) are clamped to zero; anything more negative throws
/// NotPsdError. A materially asymmetric input throws SymmetryError.
Eigen::MatrixXd psd_sqrt(const Eigen::MatrixXd& S);

}  // namespace xsdep
