#ifndef SELAB_SPECIAL_HPP
#define SELAB_SPECIAL_HPP

namespace selab {

enum class NormalKind { Pdf, Cdf, Quantile };

/// Standard normal pdf/cdf/quantile dispatcher. Quantile requires x in (0,1).
double std_normal(NormalKind kind, double x);

double norm_pdf(double x);
double norm_cdf(double x);

/// Inverse standard normal CDF (Wichura's PPND16 rational approximations),
/// absolute error below 1e-9 over (0,1).
double norm_quantile(double p);

/// log(1 - Phi(x)), stable in the far right tail where erfc underflows.
double norm_log_sf(double x);

/// Regularized lower incomplete gamma P(a, x) for a > 0, x >= 0.
/// Series expansion for x < a + 1, Lentz continued fraction otherwise.
double reg_gamma_lower(double a, double x);

/// log density of Gamma(shape, rate) at y > 0.
double log_gamma_pdf(double y, double shape, double rate);

/// log density of chi-square with df degrees of freedom at w > 0.
double log_chi2_pdf(double w, double df);

}  // namespace selab

#endif  // SELAB_SPECIAL_HPP
