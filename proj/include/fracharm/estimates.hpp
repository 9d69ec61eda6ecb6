#pragma once

#include <array>
#include <string>
#include <vector>

#include "fracharm/grid.hpp"

namespace fracharm {

enum class EstimateId {
    crw_bmo,
    crw_lorentz,
    fl_comm_lorentz,
    chanillo,
    leibniz_lorentz,
    leibniz_bmo,
    double_comm_1d,
    jacobian_bmo,
    jacobian_sobolev,
    hardy_duality,
};

std::string to_string(EstimateId id);
/// Throws std::invalid_argument for unknown names.
EstimateId estimate_id_from_string(const std::string& name);
const std::vector<EstimateId>& all_estimate_ids();

/// Union of the parameters used by the estimates; each estimate reads its own subset.
/// Infinite exponents are allowed where the estimate admits them.
struct EstimateParams {
    double s = 0.5;
    double sigma = 0.25;
    double p = 2.0, q = 2.0;
    double p1 = 4.0, q1 = 4.0;
    double p2 = 4.0, q2 = 4.0;
    double s1 = 0.5, s2 = 0.5;  // double-comm-1d orders
    std::array<double, 3> sob_s{2.0 / 3, 2.0 / 3, 2.0 / 3};  // jacobian-sobolev (phi, u1, u2)
    std::array<double, 3> sob_p{3.0, 3.0, 3.0};
    int axis = 0;       // Riesz direction, zero-based
    int component = 1;  // double-comm-1d: which of D1, D2
};

/// Defaults used when a config names an estimate without parameters.
EstimateParams default_params(EstimateId id);

struct EstimateDescriptor {
    EstimateId id = EstimateId::crw_bmo;
    EstimateParams params;

    static EstimateDescriptor make(EstimateId id) { return {id, default_params(id)}; }

    /// Number of functions per sample: 3 for jacobian-* and hardy-duality, else 2.
    int arity() const;
    /// Throws std::invalid_argument naming the violated hypothesis, for this grid.
    void check_admissible(const GridSpec& spec) const;
    /// Members that enter a Riesz potential are replaced by their x_1 derivative so
    /// that they are mean-free both on the torus and on the line.
    bool mean_free_member(int index) const;
};

struct EstimateValue {
    double lhs = 0, rhs = 0;
    /// Means removed before Riesz potentials (empty when none were applied).
    std::vector<double> projected_mass;
};

/// LHS and RHS on sampled inputs (already mean-free where required).
EstimateValue evaluate_estimate(const EstimateDescriptor& d, const std::vector<GridFunction>& in);

}  // namespace fracharm
