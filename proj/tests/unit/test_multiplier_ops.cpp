#include <catch2/catch_amalgamated.hpp>

#include "fracharm/error.hpp"
#include "fracharm/multiplier_ops.hpp"
#include "support.hpp"

using namespace fracharm;
using namespace fracharm::test;
using Catch::Approx;

namespace {

double pairing(const GridFunction& a, const GridFunction& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * a.spec().cell_volume();
}

}  // namespace

TEST_CASE("apply_symbol basics") {
    const auto spec = GridSpec::make(1, 64, 2.0);
    const auto f = bandlimited(spec, 1);
    const auto one = SymbolDescriptor::radial("one", [](double) { return 1.0; }, 1.0);
    const auto zero = SymbolDescriptor::radial("zero", [](double) { return 0.0; }, 0.0);
    CHECK(rel_l2(apply_symbol(f, one), f) <= 1e-14);
    CHECK(lp_norm(apply_symbol(f, zero), kInf) == 0.0);

    // Bessel-type lifting (1 + |xi|^2)^{sigma/2}, sigma = 2, on a single mode.
    const auto lift = SymbolDescriptor::radial("lift", [](double r) { return 1 + r * r; }, 1.0);
    const auto s = sine(spec);
    CHECK(rel_l2(apply_symbol(s, lift), (1 + 1 / (spec.L * spec.L)) * s) <= 1e-13);
}

TEST_CASE("apply_symbol rejects non-Hermitian and non-finite symbols") {
    const auto spec = GridSpec::make(1, 32, 1.0);
    const auto f = bandlimited(spec, 2);
    SymbolDescriptor odd{"i", [](const std::array<double, 2>&, int) { return std::complex<double>(0, 1); }, 0.0,
                         false};
    CHECK_THROWS_AS(apply_symbol(f, odd), std::domain_error);
    const auto bad = SymbolDescriptor::radial("inf", [](double) { return INFINITY; }, 0.0);
    CHECK_THROWS_AS(apply_symbol(f, bad), NumericalError);
}

TEST_CASE("Hilbert transform") {
    const auto spec = GridSpec::make(1, 128, 1.0);
    CHECK(rel_l2(hilbert(cosine(spec)), sine(spec)) <= 1e-14);
    const auto f = bandlimited(spec, 3) + constant(spec, 0.7);
    const auto Hf = hilbert(f);
    CHECK(std::abs(Hf.mean()) <= 1e-15);
    CHECK(rel_l2(hilbert(Hf), -1.0 * project_mean_zero(f)) <= 1e-10);
}

TEST_CASE("Riesz transforms in 2-D") {
    const auto spec = GridSpec::make(2, 64, 1.0);
    const auto f = bandlimited(spec, 4) + constant(spec, -1.3);
    const auto sum = riesz_transform(riesz_transform(f, 0), 0) + riesz_transform(riesz_transform(f, 1), 1);
    CHECK(rel_l2(sum, -1.0 * project_mean_zero(f)) <= 1e-10);
    CHECK_THROWS_AS(riesz_transform(f, 2), std::invalid_argument);
}

TEST_CASE("fractional Laplacian") {
    const auto spec = GridSpec::make(1, 256, 2.0);
    for (double s : {0.3, 1.0, 1.7}) {
        CHECK(rel_l2(frac_laplacian(sine(spec), s), std::pow(2 * M_PI / spec.L, s) * sine(spec)) <= 1e-12);
        CHECK(lp_norm(frac_laplacian(constant(spec, 3.0), s), kInf) == 0.0);
    }
    const auto f = bandlimited(spec, 5);
    CHECK(rel_l2(frac_laplacian(frac_laplacian(f, 0.4), 0.9), frac_laplacian(f, 1.3)) <= 1e-10);

    const auto s2 = GridSpec::make(2, 32, 1.0);
    const auto g = bandlimited(s2, 6);
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k)
            CHECK(rel_l2(riesz_transform(riesz_transform(frac_laplacian(g, 2.0), j), k),
                         spectral_derivative(spectral_derivative(g, j), k)) <= 1e-10);
    CHECK_THROWS_AS(frac_laplacian(f, 0.0), std::invalid_argument);
}

TEST_CASE("Riesz potential") {
    const auto spec = GridSpec::make(1, 256, 1.0);
    const auto f = bandlimited(spec, 7);
    for (double s : {0.25, 0.5, 0.9}) {
        CHECK(rel_l2(riesz_potential(frac_laplacian(f, s), s), f) <= 1e-10);
        CHECK(rel_l2(riesz_potential(sine(spec), s), std::pow(2 * M_PI, -s) * sine(spec)) <= 1e-12);
    }
    CHECK(rel_l2(riesz_potential(riesz_potential(f, 0.2), 0.3), riesz_potential(f, 0.5)) <= 1e-10);
    CHECK_THROWS_AS(riesz_potential(f + constant(spec, 0.1), 0.5), std::domain_error);
    CHECK_THROWS_AS(riesz_potential(f, 1.0), std::invalid_argument);

    double m = 0;
    const auto p = project_mean_zero(f + constant(spec, 0.25), &m);
    CHECK(m == Approx(0.25));
    CHECK(std::abs(p.mean()) <= 1e-15);
}

TEST_CASE("linearity and integration by parts") {
    const auto spec = GridSpec::make(1, 128, 1.0);
    const auto f = bandlimited(spec, 8), g = bandlimited(spec, 9);
    const double a = 1.7, b = -0.3;
    CHECK(rel_l2(hilbert(a * f + b * g), a * hilbert(f) + b * hilbert(g)) <= 1e-12);
    CHECK(rel_l2(frac_laplacian(a * f + b * g, 0.6), a * frac_laplacian(f, 0.6) + b * frac_laplacian(g, 0.6)) <=
          1e-12);

    const double scale = lp_norm(f, 2.0) * lp_norm(g, 2.0);
    CHECK(std::abs(pairing(g, hilbert(f)) + pairing(hilbert(g), f)) <= 1e-10 * scale);
    CHECK(std::abs(pairing(g, frac_laplacian(f, 0.6)) - pairing(frac_laplacian(g, 0.6), f)) <= 1e-10 * scale);
    CHECK(std::abs(pairing(g, riesz_potential(f, 0.6)) - pairing(riesz_potential(g, 0.6), f)) <= 1e-10 * scale);
}
