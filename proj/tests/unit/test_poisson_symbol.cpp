#include <catch2/catch_amalgamated.hpp>

#include <cmath>
#include <filesystem>
#include <fstream>

#include "fracharm/error.hpp"
#include "fracharm/poisson_symbol.hpp"

using namespace fracharm;
using Catch::Approx;

namespace fs = std::filesystem;

TEST_CASE("s = 1 reduces to the classical Poisson kernel") {
    const auto P = s_poisson_symbol(1.0);
    CHECK(P.value(0.0) == 1.0);
    CHECK(P.t_derivative(0.0) == 0.0);
    for (double r : {1e-6, 1e-3, 0.05, 0.3, 1.0, 2.5, 5.0}) {
        const double e = std::exp(-2 * M_PI * r);
        CHECK(P.value(r) == Approx(e).epsilon(1e-8));
        CHECK(P.t_derivative(r) == Approx(-2 * M_PI * r * e).epsilon(1e-7));
    }
}

TEST_CASE("table agrees with direct quadrature") {
    for (double s : {0.4, 1.3, 1.8}) {
        const auto P = s_poisson_symbol(s);
        double prev = 1.0;
        for (double r : {1e-4, 0.01, 0.1, 0.5, 1.0, 3.0}) {
            const double m = P.value(r);
            CHECK(m == Approx(poisson_symbol_direct(s, r)).epsilon(1e-8));
            CHECK(P.t_derivative(r) == Approx(poisson_symbol_t_derivative_direct(s, r)).epsilon(1e-7));
            CHECK(m < prev);
            CHECK(P.t_derivative(r) < 0);
            prev = m;
        }
    }
}

TEST_CASE("small-r asymptotics") {
    CHECK(poisson_symbol_kappa(1.0) == Approx(2 * M_PI).epsilon(1e-14));
    for (double s : {0.5, 1.5}) {
        const auto P = s_poisson_symbol(s);
        const double r = 1e-7;
        CHECK((1 - P.value(r)) / std::pow(r, s) == Approx(poisson_symbol_kappa(s)).epsilon(1e-3));
    }
    CHECK(boundary_constant_closed_form(1.0) == Approx(1.0).epsilon(1e-14));
    CHECK(boundary_constant_closed_form(0.5) == Approx(std::sqrt(2.0) * std::tgamma(0.75) / std::tgamma(0.25)));
}

TEST_CASE("save and load") {
    const auto dir = fs::temp_directory_path() / "fracharm_symbol_test";
    fs::create_directories(dir);
    SymbolTableOptions opt;
    opt.per_decade = 64;
    const auto P = s_poisson_symbol(0.7, opt);
    const auto path = (dir / PoissonSymbol::cache_file_name(0.7, opt)).string();
    P.save(path);
    const auto Q = PoissonSymbol::load(path, 0.7, opt);
    for (double r : {1e-5, 0.2, 2.0}) {
        CHECK(Q.value(r) == P.value(r));
        CHECK(Q.t_derivative(r) == P.t_derivative(r));
    }
    CHECK_THROWS_AS(PoissonSymbol::load(path, 0.8, opt), NumericalError);
    CHECK(PoissonSymbol::cache_file_name(0.7, opt) != PoissonSymbol::cache_file_name(0.8, opt));

    {
        std::ofstream(path, std::ios::trunc) << "not a table\n";
    }
    CHECK_THROWS_AS(PoissonSymbol::load(path, 0.7, opt), NumericalError);
    CHECK_THROWS_AS(PoissonSymbol::load((dir / "missing").string(), 0.7, opt), NumericalError);
    fs::remove_all(dir);
}

TEST_CASE("cached table is shared") {
    const auto a = cached_poisson_symbol(1.0), b = cached_poisson_symbol(1.0);
    CHECK(a.get() == b.get());
    CHECK(a->value(0.5) == Approx(std::exp(-M_PI)).epsilon(1e-8));
}

TEST_CASE("invalid orders are rejected") {
    CHECK_THROWS(s_poisson_symbol(0.0));
    CHECK_THROWS(s_poisson_symbol(2.0));
}
