#include <catch2/catch_amalgamated.hpp>

#include "fracharm/multiplier_ops.hpp"
#include "support.hpp"

using namespace fracharm;
using namespace fracharm::test;
using Catch::Approx;

TEST_CASE("grid spec validation") {
    CHECK_NOTHROW(GridSpec::make(1, 8, 1.0));
    CHECK_THROWS_AS(GridSpec::make(3, 64, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::make(1, 100, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::make(1, 4, 1.0), std::invalid_argument);
    CHECK_THROWS_AS(GridSpec::make(1, 64, 0.0), std::invalid_argument);
    const auto s = GridSpec::make(2, 32, 2.0);
    CHECK(s.size() == 1024);
    CHECK(s.cell_volume() == Approx(1.0 / 256));
}

TEST_CASE("grid function rejects non-finite values and wrong length") {
    const auto s = GridSpec::make(1, 8, 1.0);
    CHECK_THROWS_AS(GridFunction(s, std::vector<double>(7, 0.0)), std::invalid_argument);
    std::vector<double> v(8, 0.0);
    v[3] = NAN;
    CHECK_THROWS_AS(GridFunction(s, v), std::invalid_argument);
}

TEST_CASE("make_function closed forms and determinism") {
    const auto spec = GridSpec::make(1, 64, 1.0);
    const auto f = sine(spec);
    for (std::size_t i = 0; i < f.size(); ++i) CHECK(f[i] == Approx(std::sin(2 * M_PI * i / 64.0)).margin(1e-15));

    const auto g = make_function(TestFunctionDescriptor::gaussian({0.5, 0.5}, 1.0 / 16), spec);
    const auto it = std::max_element(g.values().begin(), g.values().end());
    CHECK(it - g.values().begin() == 32);

    const auto a = bandlimited(spec, 7), b = bandlimited(spec, 7), c = bandlimited(spec, 8);
    CHECK(a.values() == b.values());
    CHECK(a.values() != c.values());
}

TEST_CASE("support exceeding the period is rejected") {
    const auto spec = GridSpec::make(1, 64, 1.0);
    CHECK_THROWS_AS(make_function(TestFunctionDescriptor::bump({0.5, 0.5}, 0.6), spec), std::invalid_argument);
    CHECK_THROWS_AS(make_function(TestFunctionDescriptor::gaussian({0.5, 0.5}, 0.05).dilated(0.1), spec),
                    std::invalid_argument);
    // A sine dilated by a non-integer factor is not periodic.
    CHECK_THROWS_AS(make_function(TestFunctionDescriptor::sine({1, 0}).dilated(1.5), spec), std::invalid_argument);
}

TEST_CASE("dilated_about keeps the fixed point") {
    const auto spec = GridSpec::make(1, 1024, 1.0);
    const auto d = TestFunctionDescriptor::gaussian({0.5, 0.5}, 0.02);
    const auto f = make_function(d, spec), g = make_function(d.dilated_about(2.0, {0.5, 0.5}), spec);
    CHECK(g[512] == Approx(f[512]));
    // g(x) = f(0.5 + 2 (x - 0.5)): g at 0.5 + 8h equals f at 0.5 + 16h.
    CHECK(g[520] == Approx(f[528]).epsilon(1e-12));
}

TEST_CASE("fft of a sine and of a constant") {
    const auto spec = GridSpec::make(1, 32, 1.0);
    const auto S = fft_forward(sine(spec));
    for (std::size_t i = 0; i < S.coeffs.size(); ++i) {
        const int k = frequency_of(static_cast<int>(i), 32);
        const std::complex<double> want = k == 1 ? std::complex<double>(0, -0.5)
                                          : k == -1 ? std::complex<double>(0, 0.5)
                                                    : 0.0;
        CHECK(std::abs(S.coeffs[i] - want) < 1e-15);
    }
    const auto C = fft_forward(constant(spec, 2.5));
    CHECK(C.coeffs[0].real() == Approx(2.5));
    for (std::size_t i = 1; i < C.coeffs.size(); ++i) CHECK(std::abs(C.coeffs[i]) < 1e-15);
}

TEST_CASE("fft round trip and Parseval") {
    for (int n : {1, 2}) {
        for (int N : n == 1 ? std::vector<int>{8, 256, 4096} : std::vector<int>{8, 64, 256}) {
            const auto spec = GridSpec::make(n, N, 1.5);
            const auto f = bandlimited(spec, 3 + N, std::min(4, N / 2 - 1));
            const auto S = fft_forward(f);
            CHECK(rel_l2(fft_inverse(S), f) <= 1e-12);
            CHECK(S.hermitian_asymmetry() <= 1e-13);
            double e = 0;
            for (auto c : S.coeffs) e += std::norm(c);
            CHECK(lp_norm(f, 2.0) * lp_norm(f, 2.0) == Approx(std::pow(spec.L, n) * e).epsilon(1e-12));
        }
    }
}

TEST_CASE("fft_inverse rejects non-Hermitian spectra") {
    const auto spec = GridSpec::make(1, 16, 1.0);
    Spectrum S{spec, std::vector<std::complex<double>>(16, 0.0)};
    CHECK(lp_norm(fft_inverse(S), kInf) == 0.0);
    S.coeffs[0] = 3.0;
    CHECK(fft_inverse(S)[5] == Approx(3.0));
    S.coeffs[1] = {0.0, 1.0};
    CHECK_THROWS_AS(fft_inverse(S), std::domain_error);
}

TEST_CASE("spectral gradient") {
    const auto spec = GridSpec::make(1, 64, 2.0);
    const auto d = spectral_gradient(sine(spec))[0];
    for (std::size_t i = 0; i < d.size(); ++i)
        CHECK(d[i] == Approx(M_PI * std::cos(M_PI * coordinate(spec, i, 0))).margin(1e-12));
    CHECK(lp_norm(spectral_gradient(constant(spec, 4.0))[0], kInf) == 0.0);

    const auto s2 = GridSpec::make(2, 32, 1.0);
    const auto f = bandlimited(s2, 5);
    const auto g = spectral_gradient(f);
    REQUIRE(g.size() == 2);
    const auto div = spectral_gradient(g[0])[0] + spectral_gradient(g[1])[1];
    CHECK(rel_l2(div, -1.0 * frac_laplacian(f, 2.0)) <= 1e-10);
}
