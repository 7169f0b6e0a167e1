#pragma once

namespace moonboot {

// Regularized incomplete beta function I_x(a, b), evaluated by
// continued fraction with the symmetry switch at x > (a+1)/(a+b+2).
// Accurate to ~1e-12 relative for a, b up to 1e6. Throws on
// out-of-range parameters or if the continued fraction fails to
// converge within the iteration cap.
double reg_incomplete_beta(double a, double b, double x);

// Standard normal CDF, |error| <= 1e-12.
double std_normal_cdf(double t);

// Standard normal density exp(-t^2/2)/sqrt(2*pi).
double std_normal_pdf(double t);

// Inverse of std_normal_cdf on (0, 1).
double std_normal_quantile(double p);

// Second Hermite polynomial H2(x) = x^2 - 1.
double hermite2(double x);

} // namespace moonboot
