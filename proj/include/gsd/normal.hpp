#pragma once

namespace gsd {

double norm_pdf(double x);
double norm_cdf(double x);

/// Inverse standard normal CDF (Wichura's AS 241, full double precision).
/// Throws std::domain_error outside (0,1).
double norm_quantile(double p);

/// P(X > h, Y > k) for standard bivariate normal (X, Y) with correlation r.
/// Drezner-Wesolowsky style Gauss-Legendre quadrature; absolute accuracy
/// well below 1e-14. Infinite arguments reduce to univariate tails.
double bvn_upper(double h, double k, double r);

}  // namespace gsd
