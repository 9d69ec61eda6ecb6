#pragma once

#include <memory>
#include <string>
#include <vector>

namespace fracharm {

struct SymbolTableOptions {
    double r_min = 1e-9;
    double r_max = 64.0;
    int per_decade = 256;
    double tolerance = 1e-12;  // relative, per quadrature

    bool operator==(const SymbolTableOptions&) const = default;
};

/// Radial Fourier symbol m_s(r) of the generalized Poisson kernel, normalized so
/// m_s(0) = 1 (m_1(r) = exp(-2 pi r)), together with D_s(r) = r m_s'(r), which is
/// the symbol of t d/dt at argument r = t|xi|.
///
/// Both are stored as log-values on a uniform grid in log r with exact slopes and
/// evaluated by cubic Hermite interpolation.
class PoissonSymbol {
public:
    double s() const { return s_; }
    const SymbolTableOptions& options() const { return opt_; }

    double value(double r) const;
    /// r m'(r); negative for r > 0, 0 at r = 0.
    double t_derivative(double r) const;

    bool in_range(double r) const { return r >= opt_.r_min; }
    std::size_t rows() const { return u_.size(); }

    void save(const std::string& path) const;
    /// Throws NumericalError naming the path if the file is malformed or does not
    /// match (s, options).
    static PoissonSymbol load(const std::string& path, double s, const SymbolTableOptions& opt);
    static std::string cache_file_name(double s, const SymbolTableOptions& opt);

    friend PoissonSymbol s_poisson_symbol(double s, const SymbolTableOptions& opt);

private:
    double s_ = 1.0;
    SymbolTableOptions opt_;
    double u0_ = 0, du_ = 1;
    std::vector<double> u_, log_m_, slope_m_, log_d_, slope_d_;
    double kappa_m_ = 0, kappa_d_ = 0;  // small-r continuation coefficients

    void finish();
};

/// Tabulates by adaptive quadrature of the lambda-integral. Throws NumericalError
/// naming the offending r on non-convergence.
PoissonSymbol s_poisson_symbol(double s, const SymbolTableOptions& opt = {});

/// Direct quadrature (no table) of m_s(r) and r m_s'(r), for tests and diagnostics.
double poisson_symbol_direct(double s, double r);
double poisson_symbol_t_derivative_direct(double s, double r);

/// Shared immutable table for s, computed once per process. When FRACHARM_CACHE_DIR
/// is set, tables are read from / written to that directory.
std::shared_ptr<const PoissonSymbol> cached_poisson_symbol(double s);

/// Leading small-r behaviour m_s(r) ~ 1 - kappa r^s: kappa = pi^s Gamma(1-s/2)/Gamma(1+s/2).
double poisson_symbol_kappa(double s);

/// lim_{t->0} -t^{1-s} dF/dt = c (-Delta)^{s/2} f for the normalized kernel:
/// c = 2^{1-s} Gamma(1-s/2)/Gamma(s/2).
double boundary_constant_closed_form(double s);

}  // namespace fracharm
