#pragma once

#include <limits>
#include <vector>

#include "fracharm/grid.hpp"

namespace fracharm {

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Riemann sum with cell volume h^n; p = infinity is max |f|.
double lp_norm(const GridFunction& f, double p);

struct LorentzExponents {
    double p = 2.0;  // (1, inf) or inf
    double q = 2.0;  // [1, inf]
    void validate() const;
};

/// Decreasing rearrangement as a step function, integrated exactly per step.
double lorentz_norm(const GridFunction& f, LorentzExponents e);

/// Gagliardo double integral with the torus metric, diagonal cells excluded.
/// n = 2 requires N <= 96.
double slobodeckij_seminorm(const GridFunction& f, double nu, double p);

/// nu < 1: sup over pairs of |f(x)-f(y)|/d(x,y)^nu; nu = 1: max |spectral grad f|.
double holder_seminorm(const GridFunction& f, double nu);

/// Balls B(x, r) are the cells whose centers lie within torus distance r of x
/// (offsets taken in the fundamental domain, so each cell counts once); |B| is
/// the cell count times h^n.
struct TentFamily {
    std::vector<std::size_t> centers;
    std::vector<double> radii;  // ascending

    /// Dyadic radii 2^m h, m = 0..log2(N/2); every stride-th grid point per axis.
    static TentFamily dyadic(const GridSpec& spec, int stride = 1);
    /// Default: dyadic radii at every grid point. Sparser lattices make the sup jump under
    /// dilation for oscillatory data.
    static TentFamily standard(const GridSpec& spec);
    /// Every radius m h for m = 0..N/2, all centers.
    static TentFamily exhaustive(const GridSpec& spec);
};

/// Sup over the family's balls of the mean oscillation |B|^-1 int_B |f - f_B|.
double bmo_seminorm(const GridFunction& f, const TentFamily& tents);
double bmo_seminorm(const GridFunction& f);

/// Sup over the given radii (the single cell is always included) of the average of |f|.
GridFunction maximal_function(const GridFunction& f, const std::vector<double>& radii);
/// Radii of TentFamily::dyadic.
GridFunction maximal_function(const GridFunction& f);

// ---- shared ball machinery ----

/// One row run of a ball: offsets (row, col_lo..col_hi); in 1-D row is 0.
struct BallRun {
    int row, lo, hi;
};

/// Offsets within torus distance r (strict: < r, else <= r), fundamental domain.
std::vector<BallRun> ball_runs(const GridSpec& spec, double r, bool strict);
std::size_t ball_count(const std::vector<BallRun>& runs);

/// Periodic window sums via per-row prefix sums.
class BallSummer {
public:
    explicit BallSummer(const GridFunction& g);
    double sum(std::size_t center, const std::vector<BallRun>& runs) const;

private:
    GridSpec spec_;
    std::vector<double> prefix_;  // per row, length 2N+1
};

}  // namespace fracharm
