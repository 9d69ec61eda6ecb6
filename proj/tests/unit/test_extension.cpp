#include <catch2/catch_amalgamated.hpp>

#include "fracharm/extension.hpp"
#include "fracharm/multiplier_ops.hpp"
#include "support.hpp"

using namespace fracharm;
using namespace fracharm::test;
using Catch::Approx;

TEST_CASE("t levels") {
    const auto lv = TLevels::log_spaced(1e-3, 2.0, 33);
    REQUIRE(lv.size() == 33);
    CHECK(lv.t.front() == Approx(1e-3));
    CHECK(lv.t.back() == Approx(2.0));
    double w = 0;
    for (double x : lv.w) w += x;
    CHECK(w == Approx(std::log(2e3)).epsilon(1e-12));
    const auto r = lv.refined();
    REQUIRE(r.size() == 65);
    for (std::size_t i = 0; i < lv.size(); ++i) CHECK(r.t[2 * i] == Approx(lv.t[i]).epsilon(1e-14));
    CHECK(r.spacing() == Approx(lv.spacing() / 2));

    const auto spec = GridSpec::make(1, 256, 1.0);
    CHECK_NOTHROW(TLevels::log_spaced(spec.h() / 8, 4.0, 16).validate(spec));
    CHECK_THROWS_AS(TLevels::log_spaced(spec.h() / 9, 1.0, 32).validate(spec), std::invalid_argument);
    CHECK_THROWS_AS(TLevels::log_spaced(spec.h(), 4.5, 32).validate(spec), std::invalid_argument);
    CHECK_THROWS_AS(TLevels::log_spaced(spec.h(), 1.0, 15).validate(spec), std::invalid_argument);
}

TEST_CASE("extension of single modes and constants") {
    const auto spec = GridSpec::make(1, 128, 1.0);
    const auto f = sine(spec, 2);
    for (double t : {0.001, 0.05, 0.4}) {
        // s = 1: F = exp(-2 pi t |xi|) f with |xi| = 2
        CHECK(rel_l2(extend_at(f, 1.0, t), std::exp(-4 * M_PI * t) * f) <= 1e-8);
        CHECK(rel_l2(extend_dt_at(f, 1.0, t), -4 * M_PI * std::exp(-4 * M_PI * t) * f) <= 1e-7);
        for (double s : {0.5, 1.5})
            CHECK(lp_norm(extend_at(constant(spec, 2.0), s, t) - constant(spec, 2.0), kInf) <= 1e-14);
    }
}

TEST_CASE("dF/dt matches a centered difference") {
    const auto spec = GridSpec::make(1, 256, 1.0);
    const auto f = bandlimited(spec, 3);
    for (double s : {0.6, 1.4}) {
        const double t = 0.02, d = 1e-5;
        const auto fd = (1 / (2 * d)) * (extend_at(f, s, t + d) - extend_at(f, s, t - d));
        CHECK(rel_l2(extend_dt_at(f, s, t), fd) <= 1e-6);
    }
}

TEST_CASE("extend_field carries the requested derivatives") {
    const auto spec = GridSpec::make(2, 32, 1.0);
    const auto f = bandlimited(spec, 4);
    const auto lv = TLevels::log_spaced(spec.h() / 4, 2.0, 20);
    const auto E = extend_field(f, 0.8, lv, {true, true});
    REQUIRE(E.F.size() == 20);
    REQUIRE(E.has_t());
    REQUIRE(E.has_x());
    REQUIRE(E.dx[3].size() == 2);
    CHECK(rel_l2(E.F[5], extend_at(f, 0.8, lv.t[5])) <= 1e-14);
    CHECK(rel_l2(E.dx[5][1], spectral_derivative(E.F[5], 1)) <= 1e-10);
    const auto plain = extend_field(f, 0.8, lv);
    CHECK_FALSE(plain.has_t());
    CHECK_FALSE(plain.has_x());
    CHECK_THROWS_AS(extend_field(f, 0.8, TLevels::log_spaced(spec.h() / 16, 2.0, 20)), std::invalid_argument);
}

TEST_CASE("maximum principle") {
    const auto spec = GridSpec::make(1, 512, 1.0);
    const auto f = make_function(TestFunctionDescriptor::bump({0.5, 0.5}, 0.1), spec);
    for (double s : {0.5, 1.0, 1.7})
        for (double t : {0.01, 0.1, 1.0}) {
            const auto F = extend_at(f, s, t);
            CHECK(lp_norm(F, kInf) <= lp_norm(f, kInf) * (1 + 1e-10));
            CHECK(F.mean() == Approx(f.mean()).epsilon(1e-12));
        }
}

TEST_CASE("boundary limit") {
    const auto spec = GridSpec::make(1, 1024, 1.0);
    const double h = spec.h();
    std::vector<double> ts;
    for (int i = 0; i < 5; ++i) ts.push_back(h / 4 * std::pow(8.0, i / 4.0));
    const auto f = make_function(TestFunctionDescriptor::gaussian({0.5, 0.5}, 0.05), spec);
    for (double s : {0.5, 1.0, 1.5}) {
        const auto r = boundary_limit_check(f, s, ts);
        CHECK(r.closed_form == Approx(boundary_constant_closed_form(s)));
        CHECK(r.c == Approx(r.closed_form).epsilon(1e-3));
        // the fit degrades with t as the t^{2-s} correction grows
        CHECK(r.residual.front() <= 0.02);
        for (double res : r.residual) CHECK(res <= 0.1);
    }
    CHECK_THROWS_AS(boundary_limit_check(f, 1.0, {h / 8, h}), std::invalid_argument);
}

TEST_CASE("harmonicity residual is second order in the level spacing") {
    const auto spec = GridSpec::make(1, 256, 1.0);
    const auto f = make_function(TestFunctionDescriptor::gaussian({0.5, 0.5}, 0.05), spec);
    const auto lv = TLevels::log_spaced(spec.h(), 1.0, 48);
    const auto a = s_harmonicity_residual(extend_field(f, 1.3, lv, {true, true}));
    const auto b = s_harmonicity_residual(extend_field(f, 1.3, lv.refined(), {true, true}));
    REQUIRE(a.t.size() == 46);
    // coarse interior level i sits at fine interior level 2i + 1
    for (std::size_t i = 5; i < a.t.size(); i += 10) {
        CHECK(b.t[2 * i + 1] == Approx(a.t[i]));
        CHECK(a.residual[i] / b.residual[2 * i + 1] == Approx(4.0).epsilon(0.2));
    }
}

TEST_CASE("decay profiles") {
    const auto spec = GridSpec::make(1, 512, 1.0);
    const auto f = make_function(TestFunctionDescriptor::gaussian({0.5, 0.5}, 1.0 / 16), spec);
    const auto lv = TLevels::log_spaced(spec.h() / 4, 2.0, 40);
    const auto E = extend_field(f, 1.0, lv, {true, true});
    const auto d0 = decay_profile(E, 0);
    REQUIRE(d0.t.size() == 40);
    for (std::size_t i = 0; i < d0.t.size(); ++i) {
        CHECK(d0.sup_plain[i] <= lp_norm(f, kInf) * (1 + 1e-12));
        CHECK(d0.sup_scaled[i] == Approx(d0.t[i] * d0.sup_plain[i]));
    }
    const auto d1 = decay_profile(E, 1);
    CHECK(d1.sup_scaled.size() == 40);
    CHECK_THROWS(decay_profile(extend_field(f, 1.0, lv), 1));
}
