#pragma once

namespace riviv {

/// Regularized lower incomplete gamma P(a, x), a > 0, x >= 0.
/// Series expansion for x < a + 1, continued fraction otherwise.
double gamma_p(double a, double x);

/// Chi-square CDF with df degrees of freedom: P(df/2, x/2).
double chi2_cdf(int df, double x);

/// Chi-square density.
double chi2_pdf(int df, double x);

/// Inverse of chi2_cdf: the q with chi2_cdf(df, q) = p, |CDF error| <= 1e-10.
/// Bracketing plus bisection on the regularized incomplete gamma.
/// Throws for p outside (0, 1) or df < 1.
double chi2_quantile(int df, double p);

}  // namespace riviv
