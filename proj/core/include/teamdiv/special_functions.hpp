#pragma once

namespace teamdiv {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation.
// Requires a > 0, b > 0, 0 <= x <= 1; throws std::domain_error otherwise.
double regularized_incomplete_beta(double a, double b, double x);

// Regularized lower / upper incomplete gamma P(a, x), Q(a, x) = 1 - P.
// Series for x < a + 1, continued fraction otherwise.
double regularized_gamma_p(double a, double x);
double regularized_gamma_q(double a, double x);

// Two-sided tail probability of Student's t with `df` degrees of freedom.
double student_t_two_sided_p(double t, double df);

// Upper tail of the chi-square distribution.
double chi_square_upper_p(double statistic, double df);

}  // namespace teamdiv
