#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fracharm/estimates.hpp"
#include "fracharm/grid.hpp"

namespace fracharm {

/// One tuple of inputs. When `constant_first` is set the first member (phi) is
/// replaced by that constant, which makes the RHS vanish in exact arithmetic.
struct FamilySample {
    std::vector<TestFunctionDescriptor> members;
    std::optional<double> constant_first;
};

struct FamilyOptions {
    std::uint64_t seed = 20240611;
    int bumps = 10;
    int gaussians = 5;
    int random = 5;
    /// Constant-phi tuples appended after the regular ones.
    std::vector<double> constants{1.0, -0.7};
    /// All members of a tuple share one center.
    bool shared_center = false;
};

/// Defaults per estimate. Chanillo tuples share their center: an off-center product
/// phi u carries mass whose |x|^{s-n} far field the torus cannot represent, and the
/// resulting bias decays only like (size/L)^{n-s-n/q}.
FamilyOptions family_options_for(const EstimateDescriptor& d);

/// Deterministic family of `arity`-tuples. Members of one tuple share a kind;
/// centers are jittered around the middle of the period and sizes chosen so
/// that dilations by 1/2 and 2 about the middle keep every support in one period.
std::vector<FamilySample> make_family(const GridSpec& spec, int arity, const FamilyOptions& opt = {});

struct VerifyOptions {
    double slack = 1.5;
    double dilation_tolerance = 0.15;
    double zero_lhs_tolerance = 1e-12;
    std::vector<double> lambdas{0.5, 2.0};
};

struct SampleRecord {
    std::size_t index = 0;
    std::string description;
    double lhs = 0, rhs = 0, ratio = 0;
    std::vector<double> dilated_ratio;  // one per VerifyOptions::lambdas
    double dilation_change = 0;         // max |ratio_lambda / ratio - 1|
    std::vector<double> projected_mass;
};

struct RatioReport {
    std::string estimate_id;
    GridSpec grid;
    /// [t_1, t_M] when the estimate used extension levels; empty otherwise.
    std::vector<double> t_truncation;
    std::vector<double> lambdas;

    std::vector<SampleRecord> samples;   // RHS > 0
    std::vector<SampleRecord> zero_rhs;  // constant phi or RHS == 0

    double max_ratio = 0;
    double fitted_constant = 0;       // max over even-indexed samples
    double validation_max_ratio = 0;  // max over odd-indexed samples
    double dilation_stability = 0;
    double zero_rhs_max_lhs = 0;

    double slack = 1.5;
    bool validated = false;
    bool dilation_ok = false;
    bool zero_rhs_ok = false;
    bool pass = false;
};

/// Inputs of one sample as evaluated (mean-free transform and constants applied).
std::vector<GridFunction> sample_inputs(const EstimateDescriptor& d, const FamilySample& s,
                                        const GridSpec& spec, double lambda = 1.0);

/// Throws std::invalid_argument for inadmissible parameters or a family smaller than 8.
RatioReport verify_estimate(const EstimateDescriptor& d, const std::vector<FamilySample>& family,
                            const GridSpec& spec, const VerifyOptions& opt = {});

}  // namespace fracharm
