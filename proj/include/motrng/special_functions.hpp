#pragma once

namespace motrng {

/// Complementary error function. Thin wrapper over the C library's erfc,
/// which is validated against a high-precision table in the test suite.
double erfc(double x);

/// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
/// Series expansion below x < a+1, Lentz continued fraction above;
/// accurate to well under 1e-10 over the battery's parameter range.
double regularized_gamma_q(double a, double x);

/// Regularized lower incomplete gamma P(a, x) = 1 - Q(a, x).
double regularized_gamma_p(double a, double x);

/// Standard normal CDF.
double normal_cdf(double z);

} // namespace motrng
