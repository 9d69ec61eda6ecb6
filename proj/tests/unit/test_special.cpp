#include <catch2/catch_amalgamated.hpp>

#include <cmath>

#include "fracharm/special.hpp"

using namespace fracharm;
using Catch::Approx;

TEST_CASE("Hurwitz zeta") {
    CHECK(hurwitz_zeta(2.0, 1.0) == Approx(M_PI * M_PI / 6).epsilon(1e-13));
    // zeta(3, 1/2) = 7 zeta(3)
    CHECK(hurwitz_zeta(3.0, 0.5) == Approx(7 * 1.2020569031595942).epsilon(1e-13));
    // continuation below the pole
    CHECK(hurwitz_zeta(0.5, 1.0) == Approx(-1.4603545088095868).epsilon(1e-12));
    // zeta(s, a) = a^-s + zeta(s, a + 1)
    for (double s : {0.3, 0.8, 1.5})
        CHECK(hurwitz_zeta(s, 0.37) == Approx(std::pow(0.37, -s) + hurwitz_zeta(s, 1.37)).epsilon(1e-12));
    CHECK_THROWS(hurwitz_zeta(1.0, 1.0));
}

TEST_CASE("kernel constants") {
    CHECK(frac_laplacian_constant(1, 1.0) == Approx(1 / M_PI).epsilon(1e-14));
    CHECK(frac_laplacian_constant(2, 1.0) == Approx(1 / (2 * M_PI)).epsilon(1e-14));
    // 2^s Gamma((n+s)/2) / (pi^{n/2} |Gamma(-s/2)|)
    const double s = 0.5;
    CHECK(frac_laplacian_constant(1, s) ==
          Approx(std::pow(2, s) * std::tgamma(0.75) / (std::sqrt(M_PI) * std::abs(std::tgamma(-0.25))))
              .epsilon(1e-13));
    // Gamma((n-s)/2) / (2^s pi^{n/2} Gamma(s/2)); n = 1, s = 1/2 gives 1/sqrt(2 pi)
    CHECK(riesz_potential_constant(1, 0.5) == Approx(1 / std::sqrt(2 * M_PI)).epsilon(1e-14));
    CHECK(riesz_transform_constant(1) == Approx(1 / M_PI).epsilon(1e-15));
    CHECK(riesz_transform_constant(2) == Approx(1 / (2 * M_PI)).epsilon(1e-14));
}

TEST_CASE("periodized kernels") {
    for (double y : {-0.4, 0.01, 0.3}) {
        const double sn = std::sin(M_PI * y);
        CHECK(periodic_power_remainder(2.0, y, 1.0) == Approx(M_PI * M_PI / (sn * sn) - 1 / (y * y)).epsilon(1e-12));
        CHECK(periodic_cot_remainder(y, 1.0) == Approx(M_PI / std::tan(M_PI * y) - 1 / y).epsilon(1e-12));
        // sum over m >= 1 and m <= -1 of |y + m|^-sigma
        CHECK(periodic_power_remainder(0.5, y, 1.0) ==
              Approx(hurwitz_zeta(0.5, 1 + y) + hurwitz_zeta(0.5, 1 - y)).epsilon(1e-12));
    }
    // homogeneity in the period: L^-sigma g(y/L)
    CHECK(periodic_power_remainder(1.5, 0.6, 2.0) ==
          Approx(std::pow(2.0, -1.5) * periodic_power_remainder(1.5, 0.3, 1.0)).epsilon(1e-12));
    CHECK(periodic_cot_remainder(0.6, 2.0) == Approx(0.5 * periodic_cot_remainder(0.3, 1.0)).epsilon(1e-12));
}
