#pragma once

#include <vector>

#include "fracharm/extension.hpp"
#include "fracharm/norms.hpp"

namespace fracharm {

/// A scalar field on (x, t-level) pairs.
struct LevelField {
    GridSpec spec;
    TLevels levels;
    std::vector<GridFunction> values;
};

enum class FieldSelector {
    value,      // F
    dt,         // dF/dt
    t_dt,       // t dF/dt
    grad_x,     // |grad_x F|
    grad_full,  // |grad_{x,t} F|
};

/// Throws std::invalid_argument if the needed derivative fields are absent.
LevelField select_field(const ExtensionField& E, FieldSelector sel);

enum class SquareMode { regular, nontangential };

/// regular:       S(x) = ( int t^w |G(x,t)|^2 dt )^{1/2}, default w = -1
/// nontangential: S(x) = ( int int_{|y-x|<t} t^w |G(y,t)|^2 dy dt )^{1/2}, default w = -n-1
GridFunction square_function(const LevelField& G, SquareMode mode, double weight);
GridFunction square_function(const LevelField& G, SquareMode mode);

/// sup over tents T(B(x,r)) = {|y-x| < r - t} of ( |B|^-1 int_T t^w |G|^2 dy dt )^{1/2}.
double carleson_sup(const LevelField& G, double weight, const TentFamily& tents);
double carleson_sup(const LevelField& G, double weight);

/// N*(x) = sup over levels t and |y - x| < t of |G(y, t)|: the cone maximal function.
GridFunction nontangential_maximal(const LevelField& G);

struct TentPairing {
    double lhs = 0;       // | int int Phi G dx dt |
    double carleson = 0;  // carleson_sup(Phi, w = 1)
    double square_l1 = 0; // || nontangential square function of G ||_1
    double ratio = 0;     // lhs / (carleson * square_l1), 0 when both sides vanish
};

TentPairing tent_pairing_bound_check(const LevelField& Phi, const LevelField& G);

}  // namespace fracharm
