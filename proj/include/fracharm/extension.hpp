#pragma once

#include <vector>

#include "fracharm/grid.hpp"
#include "fracharm/poisson_symbol.hpp"

namespace fracharm {

/// Heights t_1 < ... < t_M, log-spaced, with trapezoid weights in u = log t so that
/// sum_i w_i g(t_i) approximates int g(t) dt/t over [t_1, t_M].
struct TLevels {
    std::vector<double> t;
    std::vector<double> w;

    static TLevels log_spaced(double t_min, double t_max, int M);
    /// Halved spacing over the same range: level i here is level 2i of the result.
    TLevels refined() const;

    std::size_t size() const { return t.size(); }
    double spacing() const;  // uniform step in log t
    /// Throws std::invalid_argument unless t_1 >= h/8, t_M <= 4L, M >= 16.
    void validate(const GridSpec& spec) const;
};

struct DerivativeFlags {
    bool t = false;  // dF/dt
    bool x = false;  // spatial gradient
};

/// F(., t) = P^s_t f on every level, with optional derivative fields.
struct ExtensionField {
    GridSpec spec;
    double s = 1.0;
    TLevels levels;
    std::vector<GridFunction> F;
    std::vector<GridFunction> dt;               // dF/dt per level, empty if absent
    std::vector<std::vector<GridFunction>> dx;  // [level][axis], empty if absent

    bool has_t() const { return !dt.empty(); }
    bool has_x() const { return !dx.empty(); }
};

/// Spectral extension. Levels are validated against the grid; throws
/// std::invalid_argument if t_1 / L falls below the symbol table range.
ExtensionField extend_field(const GridFunction& f, double s, const TLevels& levels,
                            DerivativeFlags flags = {});

/// Single level without the level-count rules; used for t outside a TLevels set.
GridFunction extend_at(const GridFunction& f, double s, double t);
GridFunction extend_dt_at(const GridFunction& f, double s, double t);

struct BoundaryLimitResult {
    std::vector<double> ts;
    std::vector<double> c_t;       // least-squares scalar per t
    std::vector<double> residual;  // ||g_t - c_t L f|| / ||c_t L f||
    double c = 0.0;                // extrapolated to t -> 0
    double closed_form = 0.0;      // 2^{1-s} Gamma(1-s/2) / Gamma(s/2)
};

/// Fits -t^{1-s} dF/dt against (-Delta)^{s/2} f for each t in small_ts (which must
/// lie in [h/4, 8h]) and extrapolates in t with the basis {1, t^{2-s}, t^2}.
BoundaryLimitResult boundary_limit_check(const GridFunction& f, double s,
                                         const std::vector<double>& small_ts);

struct HarmonicityResidual {
    std::vector<double> t;         // interior levels
    std::vector<double> residual;  // ||R||_2 / ||t^{1-s} grad F||_2 per level
};

/// R = t^{1-s} Laplacian_x F + d/dt(t^{1-s} dF/dt), with the t-part discretized as
/// t^{-1} d/du(e^{-su} dF/du), u = log t, by the centered conservative 3-point stencil.
HarmonicityResidual s_harmonicity_residual(const ExtensionField& F);

struct DecayProfile {
    std::vector<double> t;
    std::vector<double> sup_scaled;  // sup_x t^{n+k} |grad^k F|
    std::vector<double> sup_plain;   // sup_x t^k |grad^k F|
};

/// k = 1 uses the full (x, t) gradient and needs both derivative fields.
DecayProfile decay_profile(const ExtensionField& F, int k);

}  // namespace fracharm
