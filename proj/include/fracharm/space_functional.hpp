#pragma once

#include "fracharm/extension.hpp"

namespace fracharm {

enum class SpaceKind { besov, triebel };
enum class SpaceDerivative { frac_laplacian_beta, dt, grad_x };

struct SpaceFunctionalParams {
    SpaceKind kind = SpaceKind::triebel;
    double alpha = 0.0;
    double beta = 1.0;  // only used by frac_laplacian_beta
    double p = 2.0;
    double q = 2.0;     // may be infinite
    double s = 1.0;     // extension order
    SpaceDerivative derivative = SpaceDerivative::dt;

    /// Throws std::invalid_argument naming the violated constraint.
    void validate() const;
};

/// Continuous characterizations through the extension, with the t-integral
/// truncated to the levels:
///   triebel: ( int ( int |t^{-1/q-alpha+c} G(x,t)|^q dt )^{p/q} dx )^{1/p}
///   besov:   ( int ( int |t^{-1/q-alpha+c} G(x,t)|^p dx )^{q/p} dt )^{1/q}
/// where (G, c) is (P_t (-Delta)^{beta/2} f, beta), (dF/dt, 1) or (|grad_x F|, 1).
double space_functional(const GridFunction& f, const SpaceFunctionalParams& prm,
                        const TLevels& levels);

}  // namespace fracharm
