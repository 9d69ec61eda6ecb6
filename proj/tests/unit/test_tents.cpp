#include <catch2/catch_amalgamated.hpp>

#include "fracharm/tents.hpp"
#include "support.hpp"

using namespace fracharm;
using namespace fracharm::test;
using Catch::Approx;

namespace {

LevelField constant_field(const GridSpec& spec, const TLevels& lv, double c) {
    LevelField G{spec, lv, {}};
    for (std::size_t i = 0; i < lv.size(); ++i) G.values.push_back(constant(spec, c));
    return G;
}

}  // namespace

TEST_CASE("select_field") {
    const auto spec = GridSpec::make(1, 128, 1.0);
    const auto f = bandlimited(spec, 1);
    const auto lv = TLevels::log_spaced(spec.h(), 1.0, 24);
    const auto E = extend_field(f, 1.0, lv, {true, true});
    const auto tdt = select_field(E, FieldSelector::t_dt);
    const auto dt = select_field(E, FieldSelector::dt);
    CHECK(rel_l2(tdt.values[7], lv.t[7] * dt.values[7]) <= 1e-14);
    const auto gx = select_field(E, FieldSelector::grad_x);
    const auto gf = select_field(E, FieldSelector::grad_full);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        CHECK(gx.values[3][i] == Approx(std::abs(E.dx[3][0][i])));
        CHECK(gf.values[3][i] >= gx.values[3][i]);
    }
    const auto bare = extend_field(f, 1.0, lv);
    CHECK_NOTHROW(select_field(bare, FieldSelector::value));
    CHECK_THROWS_AS(select_field(bare, FieldSelector::dt), std::invalid_argument);
    CHECK_THROWS_AS(select_field(bare, FieldSelector::grad_x), std::invalid_argument);
}

TEST_CASE("square functions of a constant field") {
    const auto spec = GridSpec::make(1, 128, 1.0);
    const auto lv = TLevels::log_spaced(spec.h(), 1.0, 32);
    const auto G = constant_field(spec, lv, 2.0);
    double sum_w = 0;
    for (double w : lv.w) sum_w += w;
    // weight -1 with dt/t quadrature weights w_i: int t^-1 |G|^2 dt = 4 sum w_i
    const auto S = square_function(G, SquareMode::regular);
    CHECK(S[17] == Approx(2 * std::sqrt(sum_w)).epsilon(1e-12));
    const auto N = square_function(G, SquareMode::nontangential);
    CHECK(N[5] == Approx(N[90]).epsilon(1e-12));
    CHECK(N[5] > 0);
    // homogeneity
    const auto S3 = square_function(constant_field(spec, lv, 6.0), SquareMode::regular);
    CHECK(S3[17] == Approx(3 * S[17]));
}

TEST_CASE("Carleson sup") {
    const auto spec = GridSpec::make(1, 128, 1.0);
    const auto lv = TLevels::log_spaced(spec.h(), 1.0, 32);
    CHECK(carleson_sup(constant_field(spec, lv, 0.0), 1.0) == 0.0);
    const double a = carleson_sup(constant_field(spec, lv, 1.0), 1.0);
    CHECK(a > 0);
    CHECK(carleson_sup(constant_field(spec, lv, -5.0), 1.0) == Approx(5 * a));
    CHECK(carleson_sup(constant_field(spec, lv, 1.0), 1.0, TentFamily::exhaustive(spec)) >= a * (1 - 1e-12));
}

TEST_CASE("nontangential maximal function") {
    const auto spec = GridSpec::make(1, 256, 1.0);
    const auto lv = TLevels::log_spaced(spec.h() / 4, 2.0, 32);
    const auto c = nontangential_maximal(constant_field(spec, lv, -1.5));
    CHECK(lp_norm(c - constant(spec, 1.5), kInf) == 0.0);

    const auto f = make_function(TestFunctionDescriptor::bump({0.5, 0.5}, 0.1), spec);
    const auto E = extend_field(f, 1.0, lv);
    const auto G = select_field(E, FieldSelector::value);
    const auto Nf = nontangential_maximal(G);
    for (std::size_t i = 0; i < spec.size(); ++i) {
        // the cone contains (x, t) for every level, and every F is bounded by max |f|
        double at_x = 0;
        for (const auto& v : G.values) at_x = std::max(at_x, std::abs(v[i]));
        CHECK(Nf[i] >= at_x);
        CHECK(Nf[i] <= lp_norm(f, kInf) * (1 + 1e-10));
    }
    // a spike at one cell on the lowest level is seen from x only through |y - x| < t_1 < h
    LevelField spike = constant_field(spec, lv, 0.0);
    spike.values[0][100] = 1.0;
    const auto Ns = nontangential_maximal(spike);
    CHECK(Ns[100] == 1.0);
    CHECK(Ns[101] == 0.0);
    spike.values[31][100] = 2.0;  // t = 2 covers the whole period
    CHECK(lp_norm(nontangential_maximal(spike) - constant(spec, 2.0), kInf) == 0.0);
}

TEST_CASE("tent pairing") {
    const auto spec = GridSpec::make(1, 256, 1.0);
    const auto lv = TLevels::log_spaced(spec.h(), 1.0, 32);
    const auto f = make_function(TestFunctionDescriptor::bump({0.5, 0.5}, 0.1), spec);
    const auto g = make_function(TestFunctionDescriptor::gaussian({0.45, 0.5}, 0.05), spec);
    const auto Phi = select_field(extend_field(f, 1.0, lv, {true, false}), FieldSelector::t_dt);
    const auto G = select_field(extend_field(g, 1.0, lv, {true, false}), FieldSelector::t_dt);
    const auto r = tent_pairing_bound_check(Phi, G);
    CHECK(r.lhs > 0);
    CHECK(r.carleson > 0);
    CHECK(r.square_l1 > 0);
    CHECK(r.ratio == Approx(r.lhs / (r.carleson * r.square_l1)));
    CHECK(r.ratio < 10);
    const auto z = tent_pairing_bound_check(constant_field(spec, lv, 0.0), G);
    CHECK(z.ratio == 0.0);
}
