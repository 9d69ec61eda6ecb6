#pragma once

#include <utility>

#include "fracharm/extension.hpp"
#include "fracharm/grid.hpp"
#include "fracharm/norms.hpp"

namespace fracharm {

/// [R_j, phi] f = R_j(phi f) - phi R_j f, axis zero-based.
GridFunction crw_commutator(const GridFunction& phi, const GridFunction& f, int axis);

/// [(-Delta)^{s/2}, phi] f, s in (0,1).
GridFunction fl_commutator(const GridFunction& phi, const GridFunction& f, double s);

struct ProjectedCommutator {
    GridFunction value;
    double mass_phi_u = 0.0;  // mean removed from phi u before I^s
    double mass_u = 0.0;      // mean removed from u before I^s
};

/// [I^s, phi] u = I^s(phi u) - phi I^s u, both potential inputs projected to mean zero.
ProjectedCommutator riesz_potential_commutator(const GridFunction& phi, const GridFunction& u,
                                               double s);

/// H_s(f, g) = (-Delta)^{s/2}(fg) - (-Delta)^{s/2}f g - f (-Delta)^{s/2} g, s in (0,1].
GridFunction leibniz_defect(const GridFunction& f, const GridFunction& g, double s);

/// (D1, D2) with Lambda = (-Delta)^{1/2}:
///   D1 = [H,phi](Lambda f) - [H,f](Lambda phi),  D2 = H([H,phi](Lambda f) + [H,f](Lambda phi)).
std::pair<GridFunction, GridFunction> double_commutator_1d(const GridFunction& phi,
                                                           const GridFunction& f);

enum class JacobianMethod { boundary, extension };

struct JacobianPairing {
    double value = 0.0;
    /// extension method: error estimate for the [0, t_1] end correction and the [t_M, inf) tail.
    double truncation_remainder = 0.0;
};

/// int phi det(grad u) for n = 2. The extension method evaluates
/// -int_{R^3_+} det(grad Phi, grad U1, grad U2) with harmonic extensions on `levels`
/// (the sign comes from the induced boundary orientation of {t = 0}).
JacobianPairing jacobian_pairing(const GridFunction& phi, const GridFunction& u1,
                                 const GridFunction& u2, JacobianMethod method,
                                 const TLevels* levels = nullptr);

/// Default levels for the extension method: h/8 .. 4L with 96 levels.
TLevels jacobian_levels(const GridSpec& spec);

struct HardyDuality {
    double lhs = 0, rhs = 0, ratio = 0;
};

/// |int (-Delta)^{s/2} H_s(phi,f) g| against ||fL^s phi||_{(p,q)} ||fL^s f||_{(p',q')} [g]_BMO.
HardyDuality hardy_duality_check(const GridFunction& phi, const GridFunction& f,
                                 const GridFunction& g, double s, LorentzExponents e);

}  // namespace fracharm
