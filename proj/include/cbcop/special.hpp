#pragma once

// Standard-normal cdf/quantile and the regularized incomplete gamma tail.
//
// Self-contained rational approximations with stated error budgets:
//   normal_cdf      absolute error < 1e-14  (rational erfc, three regimes)
//   normal_quantile absolute error < 1e-12  (rational initial guess plus one
//                                            Halley refinement step)
//   gamma_q         relative error < 1e-12  (series / continued fraction)
// The unit tests pin these against 20-digit reference values.

namespace cbcop {

double normal_pdf(double x);

// P(Z <= x) for Z standard normal.
double normal_cdf(double x);

// Inverse of normal_cdf on (0, 1).  Throws std::domain_error outside (0, 1).
double normal_quantile(double u);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a, x) / Gamma(a),
// a > 0, x >= 0.
double gamma_q(double a, double x);

// P(X > x) for X chi-squared with df degrees of freedom: Q(df/2, x/2).
double chi_squared_survival(double df, double x);

} // namespace cbcop
