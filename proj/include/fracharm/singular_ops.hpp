#pragma once

#include <optional>

#include "fracharm/grid.hpp"

namespace fracharm {

enum class SingularCellRule { exclude, second_difference_regular, analytic_cell_average };

struct QuadratureConfig {
    /// true: R^n kernel truncated to one period, tail bound reported but not added.
    /// false: the kernel is summed over all periodic images (1-D only), so the
    /// result approximates the torus operator and no tail remains.
    bool treat_as_compact = false;
    /// Unset means the operator's natural rule.
    std::optional<SingularCellRule> rule;
};

struct QuadratureResult {
    GridFunction values;
    /// Sup over x of the omitted |y| > L/2 contribution (0 for periodized kernels).
    double tail_bound = 0.0;
};

/// Second-difference singular integral for (-Delta)^{s/2}, s in (0,2).
QuadratureResult frac_laplacian_quadrature(const GridFunction& f, double s,
                                           const QuadratureConfig& cfg = {});

/// Principal-value Hilbert transform by symmetric pairing, y = 0 cell excluded. n = 1.
QuadratureResult hilbert_pv_quadrature(const GridFunction& f, const QuadratureConfig& cfg = {});

/// Convolution with C|y|^{s-n}; requires a mean-negligible input.
QuadratureResult riesz_potential_quadrature(const GridFunction& f, double s,
                                            const QuadratureConfig& cfg = {});

}  // namespace fracharm
