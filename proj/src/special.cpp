#include "fracharm/special.hpp"

#include <cmath>
#include <stdexcept>

namespace fracharm {

double hurwitz_zeta(double sigma, double a) {
    if (!(a > 0)) throw std::invalid_argument("hurwitz_zeta needs a > 0");
    if (std::abs(sigma - 1.0) < 1e-14) throw std::invalid_argument("hurwitz_zeta pole at sigma=1");
    // Euler-Maclaurin with a direct head of K terms.
    constexpr int K = 12;
    double sum = 0;
    for (int k = 0; k < K; ++k) sum += std::pow(a + k, -sigma);
    const double x = a + K;
    sum += std::pow(x, 1.0 - sigma) / (sigma - 1.0);
    sum += 0.5 * std::pow(x, -sigma);
    // Bernoulli numbers B_{2j}/(2j)!
    static const double b2j_over_fact[] = {1.0 / 12.0,        -1.0 / 720.0,
                                           1.0 / 30240.0,     -1.0 / 1209600.0,
                                           1.0 / 47900160.0,  -691.0 / 1307674368000.0,
                                           1.0 / 74724249600.0};
    double rising = sigma;  // sigma (sigma+1) ... (sigma+2j-2)
    double xp = std::pow(x, -sigma - 1.0);
    for (int j = 1; j <= 7; ++j) {
        sum += b2j_over_fact[j - 1] * rising * xp;
        rising *= (sigma + 2 * j - 1) * (sigma + 2 * j);
        xp /= x * x;
    }
    return sum;
}

double frac_laplacian_constant(int n, double s) {
    return std::pow(2.0, s) * std::tgamma(0.5 * (n + s)) /
           (std::pow(M_PI, 0.5 * n) * std::abs(std::tgamma(-0.5 * s)));
}

double riesz_potential_constant(int n, double s) {
    return std::tgamma(0.5 * (n - s)) /
           (std::pow(2.0, s) * std::pow(M_PI, 0.5 * n) * std::tgamma(0.5 * s));
}

double riesz_transform_constant(int n) {
    return std::tgamma(0.5 * (n + 1)) / std::pow(M_PI, 0.5 * (n + 1));
}

double periodic_power_remainder(double sigma, double y, double L) {
    const double u = std::abs(y) / L;
    if (u >= 1.0) throw std::invalid_argument("periodic kernel needs |y| < L");
    return std::pow(L, -sigma) * (hurwitz_zeta(sigma, 1.0 + u) + hurwitz_zeta(sigma, 1.0 - u));
}

double periodic_cot_remainder(double y, double L) {
    if (y == 0.0) return 0.0;
    // (pi/L) cot(pi y/L) = sum_m 1/(y + mL)
    return M_PI / L / std::tan(M_PI * y / L) - 1.0 / y;
}

}  // namespace fracharm
