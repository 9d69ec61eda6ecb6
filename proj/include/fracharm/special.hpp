#pragma once

namespace fracharm {

/// Hurwitz zeta sum_{k>=0} (a+k)^-sigma for a > 0, continued analytically to
/// sigma in (0,1); sigma == 1 is the pole and throws.
double hurwitz_zeta(double sigma, double a);

/// Kernel constant of the second-difference form of (-Delta)^{s/2} in R^n.
double frac_laplacian_constant(int n, double s);

/// Kernel constant of the Riesz potential I^s in R^n.
double riesz_potential_constant(int n, double s);

/// Kernel constant of the Riesz transforms in R^n (1/pi for n = 1).
double riesz_transform_constant(int n);

/// Periodized kernel sum_{m in Z} |y + mL|^-sigma with the m = 0 term removed,
/// valid for |y| < L. For sigma < 1 the divergent constant is dropped (zeta continuation).
double periodic_power_remainder(double sigma, double y, double L);

/// Smooth part of the periodized odd kernel sum_m 1/(y + mL) minus 1/y, |y| < L.
double periodic_cot_remainder(double y, double L);

}  // namespace fracharm
