#include <catch2/catch_amalgamated.hpp>

#include "fracharm/multiplier_ops.hpp"
#include "fracharm/singular_ops.hpp"
#include "support.hpp"

using namespace fracharm;
using namespace fracharm::test;

namespace {

GridFunction gaussian(const GridSpec& spec, double w) {
    return make_function(TestFunctionDescriptor::gaussian({spec.L / 2, spec.L / 2}, w), spec);
}

}  // namespace

TEST_CASE("quadrature fractional Laplacian matches the multiplier") {
    const auto spec = GridSpec::make(1, 2048, 1.0);
    const auto f = gaussian(spec, 1.0 / 16);
    for (double s : {0.3, 0.7, 1.0, 1.5}) {
        const auto q = frac_laplacian_quadrature(f, s);
        CHECK(rel_linf(q.values, frac_laplacian(f, s)) <= 2e-2);
        CHECK(q.tail_bound == 0.0);
    }
    // The periodized kernel reproduces a single mode.
    const auto s1 = GridSpec::make(1, 512, 1.0);
    CHECK(rel_linf(frac_laplacian_quadrature(sine(s1), 0.6).values, frac_laplacian(sine(s1), 0.6)) <= 2e-2);
}

TEST_CASE("quadrature error decreases under refinement") {
    double prev = 1;
    for (int N : {256, 512, 1024, 2048}) {
        const auto spec = GridSpec::make(1, N, 1.0);
        const auto f = gaussian(spec, 1.0 / 16);
        const double e = rel_linf(frac_laplacian_quadrature(f, 0.7).values, frac_laplacian(f, 0.7));
        CHECK(e < prev);
        prev = e;
    }
}

TEST_CASE("compact treatment reports a tail") {
    const auto spec = GridSpec::make(1, 1024, 1.0);
    const auto f = gaussian(spec, 0.03);
    QuadratureConfig cfg;
    cfg.treat_as_compact = true;
    const auto q = frac_laplacian_quadrature(f, 0.5, cfg);
    CHECK(q.tail_bound > 0);
    CHECK(std::isfinite(q.tail_bound));
    // Away from the edges the truncated R kernel still tracks the torus operator.
    const auto ref = frac_laplacian(f, 0.5);
    CHECK(std::abs(q.values[512] - ref[512]) <= 0.05 * std::abs(ref[512]) + q.tail_bound);
}

TEST_CASE("singular cell rules") {
    const auto spec = GridSpec::make(1, 1024, 1.0);
    const auto f = gaussian(spec, 1.0 / 16);
    const auto ref = frac_laplacian(f, 1.2);
    QuadratureConfig regular, exclude;
    regular.rule = SingularCellRule::second_difference_regular;
    exclude.rule = SingularCellRule::exclude;
    const double e_reg = rel_linf(frac_laplacian_quadrature(f, 1.2, regular).values, ref);
    const double e_exc = rel_linf(frac_laplacian_quadrature(f, 1.2, exclude).values, ref);
    CHECK(e_reg <= 5e-2);
    // Dropping the y = 0 cell loses its O(h^{2-s}) share.
    CHECK(e_exc >= e_reg);
}

TEST_CASE("Hilbert principal value") {
    const auto spec = GridSpec::make(1, 2048, 1.0);
    const auto f = gaussian(spec, 1.0 / 16);
    CHECK(rel_linf(hilbert_pv_quadrature(f).values, hilbert(f)) <= 2e-2);
    const auto s1 = GridSpec::make(1, 256, 1.0);
    CHECK(rel_linf(hilbert_pv_quadrature(cosine(s1)).values, sine(s1)) <= 5e-2);
    CHECK_THROWS_AS(hilbert_pv_quadrature(bandlimited(GridSpec::make(2, 16, 1.0), 1)), std::invalid_argument);
}

TEST_CASE("Riesz potential quadrature") {
    const auto spec = GridSpec::make(1, 2048, 1.0);
    const auto u = spectral_derivative(gaussian(spec, 1.0 / 16), 0);
    for (double s : {0.3, 0.5, 0.8})
        CHECK(rel_linf(riesz_potential_quadrature(u, s).values, riesz_potential(u, s)) <= 2e-2);
    CHECK_THROWS(riesz_potential_quadrature(gaussian(spec, 0.05), 0.5));
}
