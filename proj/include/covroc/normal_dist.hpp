#pragma once

namespace covroc {

/// Standard normal cdf.
double normal_cdf(double x);

/// Standard normal density.
double normal_pdf(double x);

/// Inverse of the standard normal cdf on (0, 1); returns -inf / +inf at 0 / 1.
double normal_quantile(double p);

}  // namespace covroc
