#include <catch2/catch_amalgamated.hpp>

#include "fracharm/harness.hpp"
#include "support.hpp"

using namespace fracharm;
using namespace fracharm::test;

TEST_CASE("estimate ids round trip") {
    for (auto id : all_estimate_ids()) CHECK(estimate_id_from_string(to_string(id)) == id);
    CHECK(all_estimate_ids().size() == 10);
    CHECK_THROWS_AS(estimate_id_from_string("crw"), std::invalid_argument);
    CHECK(EstimateDescriptor::make(EstimateId::jacobian_bmo).arity() == 3);
    CHECK(EstimateDescriptor::make(EstimateId::crw_bmo).arity() == 2);
}

TEST_CASE("admissibility") {
    const auto s1 = GridSpec::make(1, 256, 1.0), s2 = GridSpec::make(2, 64, 1.0);
    for (auto id : all_estimate_ids()) {
        const auto d = EstimateDescriptor::make(id);
        const bool two_d = id == EstimateId::jacobian_bmo || id == EstimateId::jacobian_sobolev;
        CHECK_NOTHROW(d.check_admissible(two_d ? s2 : s1));
        if (two_d) CHECK_THROWS_AS(d.check_admissible(s1), std::invalid_argument);
    }
    auto d = EstimateDescriptor::make(EstimateId::crw_lorentz);
    d.params.p1 = 1.0;
    CHECK_THROWS_AS(d.check_admissible(s1), std::invalid_argument);
    d = EstimateDescriptor::make(EstimateId::double_comm_1d);
    d.params.s1 = 0.3;  // s1 + s2 must be 1
    CHECK_THROWS_AS(d.check_admissible(s1), std::invalid_argument);
    d = EstimateDescriptor::make(EstimateId::jacobian_sobolev);
    CHECK_THROWS_AS(d.check_admissible(GridSpec::make(2, 128, 1.0)), std::invalid_argument);
}

TEST_CASE("families are deterministic and fit the period") {
    const auto spec = GridSpec::make(1, 512, 1.0);
    FamilyOptions opt;
    const auto a = make_family(spec, 2, opt), b = make_family(spec, 2, opt);
    REQUIRE(a.size() == 22);  // 10 + 5 + 5 regular, two constant-phi tuples
    for (std::size_t i = 0; i < a.size(); ++i) {
        REQUIRE(a[i].members.size() == 2);
        CHECK(describe(a[i].members[0]) == describe(b[i].members[0]));
        for (const auto& m : a[i].members)
            for (double lam : {0.5, 1.0, 2.0})
                CHECK_NOTHROW(make_function(m.dilated_about(lam, {0.5, 0.5}), spec));
    }
    CHECK(a[20].constant_first == 1.0);
    CHECK(a[21].constant_first == -0.7);
    opt.seed += 1;
    const auto c = make_family(spec, 2, opt);
    CHECK(describe(c[0].members[0]) != describe(a[0].members[0]));
}

TEST_CASE("sample inputs") {
    const auto spec = GridSpec::make(1, 512, 1.0);
    const auto d = EstimateDescriptor::make(EstimateId::chanillo);
    const auto fam = make_family(spec, 2, family_options_for(d));
    const auto in = sample_inputs(d, fam.back(), spec);
    REQUIRE(in.size() == 2);
    CHECK(lp_norm(in[0] - constant(spec, *fam.back().constant_first), kInf) == 0.0);
    // the potential input is replaced by a derivative, hence mean-free
    CHECK(d.mean_free_member(1));
    CHECK(std::abs(sample_inputs(d, fam[0], spec)[1].mean()) <= 1e-12);
}

TEST_CASE("verify_estimate on the Riesz transform commutator") {
    const auto spec = GridSpec::make(1, 512, 1.0);
    const auto d = EstimateDescriptor::make(EstimateId::crw_bmo);
    const auto fam = make_family(spec, 2, family_options_for(d));
    const auto r = verify_estimate(d, fam, spec);
    CHECK(r.estimate_id == "crw-bmo");
    CHECK(r.samples.size() == 20);
    CHECK(r.zero_rhs.size() == 2);
    CHECK(r.fitted_constant > 0);
    CHECK(r.max_ratio == std::max(r.fitted_constant, r.validation_max_ratio));
    CHECK(r.validated == (r.validation_max_ratio <= 1.5 * r.fitted_constant));
    CHECK(r.zero_rhs_max_lhs <= 1e-12);
    CHECK(r.pass);
    for (const auto& s : r.samples) {
        CHECK(s.dilated_ratio.size() == 2);
        CHECK(s.ratio == s.lhs / s.rhs);
    }

    const std::vector<FamilySample> small(fam.begin(), fam.begin() + 7);
    CHECK_THROWS_AS(verify_estimate(d, small, spec), std::invalid_argument);
    auto bad = EstimateDescriptor::make(EstimateId::crw_lorentz);
    bad.params.p1 = 1.0;
    CHECK_THROWS_AS(verify_estimate(bad, fam, spec), std::invalid_argument);
}

TEST_CASE("a scaled family changes neither ratios nor the verdict") {
    const auto spec = GridSpec::make(1, 256, 1.0);
    const auto d = EstimateDescriptor::make(EstimateId::leibniz_lorentz);
    auto fam = make_family(spec, 2, family_options_for(d));
    const auto r = verify_estimate(d, fam, spec);
    for (auto& s : fam)
        for (auto& m : s.members) m = m.scaled(3.0);
    const auto q = verify_estimate(d, fam, spec);
    // both sides are bilinear
    for (std::size_t i = 0; i < r.samples.size(); ++i)
        CHECK(q.samples[i].ratio == Catch::Approx(r.samples[i].ratio).epsilon(1e-10));
    CHECK(q.pass == r.pass);
}
