#include "fracharm/harness.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

#include "fracharm/norms.hpp"

namespace fracharm {

namespace {

double uniform(std::mt19937_64& eng, double lo, double hi) {
    return lo + (hi - lo) * unit_uniform(eng());
}

// Sizes relative to L; the 1-D grid resolves features four times smaller, which
// keeps the dilated-by-1/2 members far from the period.
double size_unit(const GridSpec& spec) { return spec.n == 1 ? 0.25 : 1.0; }

std::array<double, 2> draw_center(std::mt19937_64& eng, const GridSpec& spec) {
    const double L = spec.L, u = size_unit(spec);
    std::array<double, 2> c{0.5 * L, 0.5 * L};
    for (int a = 0; a < spec.n; ++a) c[a] += u * uniform(eng, -L / 16, L / 16);
    return c;
}

// Gaussian width or envelope; 6 w / (1/2) must stay below L/2.
double width(std::mt19937_64& eng, const GridSpec& spec) {
    const double L = spec.L;
    return spec.n == 1 ? uniform(eng, L / 160, L / 120) : uniform(eng, L / 32, L / 25);
}

TestFunctionDescriptor draw_member(std::mt19937_64& eng, FunctionKind kind, const GridSpec& spec,
                                   const std::array<double, 2>* shared) {
    const double L = spec.L;
    const auto c = shared ? *shared : draw_center(eng, spec);
    switch (kind) {
        case FunctionKind::smooth_bump: {
            const double r = spec.n == 1 ? uniform(eng, L / 64, L / 32) : uniform(eng, L / 8, L / 5);
            return TestFunctionDescriptor::bump(c, r);
        }
        case FunctionKind::gaussian:
            return TestFunctionDescriptor::gaussian(c, width(eng, spec));
        default: {
            const std::uint64_t seed = eng();
            auto d = TestFunctionDescriptor::random_bandlimited(seed, spec.n == 1 ? 3 : 1,
                                                                width(eng, spec));
            d.center = c;
            return d;
        }
    }
}

}  // namespace

std::vector<FamilySample> make_family(const GridSpec& spec, int arity, const FamilyOptions& opt) {
    spec.validate();
    if (arity < 1) throw std::invalid_argument("make_family: arity must be >= 1");
    std::vector<FamilySample> out;
    const int total = opt.bumps + opt.gaussians + opt.random;
    for (int i = 0; i < total; ++i) {
        const FunctionKind kind = i < opt.bumps                   ? FunctionKind::smooth_bump
                                  : i < opt.bumps + opt.gaussians ? FunctionKind::gaussian
                                                                  : FunctionKind::random_bandlimited;
        std::seed_seq seq{static_cast<std::uint32_t>(opt.seed),
                          static_cast<std::uint32_t>(opt.seed >> 32), static_cast<std::uint32_t>(i)};
        std::mt19937_64 eng(seq);
        FamilySample s;
        const auto shared = draw_center(eng, spec);
        for (int m = 0; m < arity; ++m)
            s.members.push_back(draw_member(eng, kind, spec, opt.shared_center ? &shared : nullptr));
        out.push_back(std::move(s));
    }
    for (std::size_t k = 0; k < opt.constants.size(); ++k) {
        FamilySample s = out.empty() ? FamilySample{} : out[k % out.size()];
        if (s.members.empty()) {
            std::mt19937_64 eng(opt.seed + k);
            for (int m = 0; m < arity; ++m)
                s.members.push_back(draw_member(eng, FunctionKind::smooth_bump, spec, nullptr));
        }
        s.constant_first = opt.constants[k];
        out.push_back(std::move(s));
    }
    return out;
}

FamilyOptions family_options_for(const EstimateDescriptor& d) {
    FamilyOptions opt;
    opt.shared_center = d.id == EstimateId::chanillo;
    return opt;
}

std::vector<GridFunction> sample_inputs(const EstimateDescriptor& d, const FamilySample& s,
                                        const GridSpec& spec, double lambda) {
    const std::array<double, 2> mid{0.5 * spec.L, 0.5 * spec.L};
    std::vector<GridFunction> in;
    for (std::size_t m = 0; m < s.members.size(); ++m) {
        if (m == 0 && s.constant_first) {
            in.push_back(constant(spec, *s.constant_first));
            continue;
        }
        auto desc = lambda == 1.0 ? s.members[m] : s.members[m].dilated_about(lambda, mid);
        auto g = make_function(desc, spec);
        if (d.mean_free_member(static_cast<int>(m))) g = spectral_derivative(g, 0);
        in.push_back(std::move(g));
    }
    return in;
}

RatioReport verify_estimate(const EstimateDescriptor& d, const std::vector<FamilySample>& family,
                            const GridSpec& spec, const VerifyOptions& opt) {
    d.check_admissible(spec);
    if (family.size() < 8) throw std::invalid_argument("verify_estimate: family size must be >= 8");
    for (const auto& s : family)
        if (static_cast<int>(s.members.size()) != d.arity())
            throw std::invalid_argument("verify_estimate: " + to_string(d.id) + " needs " +
                                        std::to_string(d.arity()) + "-tuples");

    RatioReport rep;
    rep.estimate_id = to_string(d.id);
    rep.grid = spec;
    rep.lambdas = opt.lambdas;
    rep.slack = opt.slack;

    bool have_fit = false;
    for (std::size_t i = 0; i < family.size(); ++i) {
        const auto& s = family[i];
        SampleRecord r;
        r.index = i;
        for (std::size_t m = 0; m < s.members.size(); ++m) {
            if (m) r.description += " ; ";
            if (m == 0 && s.constant_first)
                r.description += "constant(" + std::to_string(*s.constant_first) + ")";
            else
                r.description += describe(s.members[m]);
        }
        const auto v = evaluate_estimate(d, sample_inputs(d, s, spec));
        r.lhs = v.lhs;
        r.rhs = v.rhs;
        r.projected_mass = v.projected_mass;
        if (s.constant_first || !(v.rhs > 0)) {
            rep.zero_rhs_max_lhs = std::max(rep.zero_rhs_max_lhs, v.lhs);
            rep.zero_rhs.push_back(std::move(r));
            continue;
        }
        r.ratio = v.lhs / v.rhs;
        for (double lam : opt.lambdas) {
            const auto w = evaluate_estimate(d, sample_inputs(d, s, spec, lam));
            const double rl = w.rhs > 0 ? w.lhs / w.rhs : kInf;
            r.dilated_ratio.push_back(rl);
            const double change = r.ratio > 0 ? std::abs(rl / r.ratio - 1.0) : (rl == 0 ? 0.0 : kInf);
            r.dilation_change = std::max(r.dilation_change, change);
        }
        rep.max_ratio = std::max(rep.max_ratio, r.ratio);
        rep.dilation_stability = std::max(rep.dilation_stability, r.dilation_change);
        if (i % 2 == 0) {
            rep.fitted_constant = std::max(rep.fitted_constant, r.ratio);
            have_fit = true;
        } else {
            rep.validation_max_ratio = std::max(rep.validation_max_ratio, r.ratio);
        }
        rep.samples.push_back(std::move(r));
    }
    rep.validated = have_fit ? rep.validation_max_ratio <= opt.slack * rep.fitted_constant
                             : rep.validation_max_ratio == 0.0;
    rep.dilation_ok = rep.dilation_stability <= opt.dilation_tolerance;
    rep.zero_rhs_ok = rep.zero_rhs_max_lhs <= opt.zero_lhs_tolerance;
    rep.pass = rep.validated && rep.dilation_ok && rep.zero_rhs_ok;
    return rep;
}

}  // namespace fracharm
