#include "fracharm/space_functional.hpp"

#include <cmath>
#include <stdexcept>

#include "fracharm/multiplier_ops.hpp"
#include "fracharm/tents.hpp"

namespace fracharm {

void SpaceFunctionalParams::validate() const {
    if (!(s > 0 && s < 2)) throw std::invalid_argument("space_functional: s must lie in (0,2)");
    if (!(p > 0)) throw std::invalid_argument("space_functional: p must be > 0");
    if (!(q > 0)) throw std::invalid_argument("space_functional: q must be > 0");
    if (kind == SpaceKind::triebel && std::isinf(p))
        throw std::invalid_argument("space_functional: triebel form requires p != inf");
    switch (derivative) {
        case SpaceDerivative::frac_laplacian_beta:
            if (!(beta > std::max(alpha, 0.0)))
                throw std::invalid_argument("space_functional: requires beta > max(alpha, 0)");
            if (!(beta <= 1.0)) throw std::invalid_argument("space_functional: requires beta in (0,1]");
            break;
        case SpaceDerivative::dt:
            if (!(alpha < s)) throw std::invalid_argument("space_functional: dt form requires alpha < s");
            break;
        case SpaceDerivative::grad_x:
            if (!(alpha < 1.0))
                throw std::invalid_argument("space_functional: grad_x form requires alpha < 1");
            break;
    }
}

double space_functional(const GridFunction& f, const SpaceFunctionalParams& prm,
                        const TLevels& levels) {
    prm.validate();
    LevelField G;
    double c = 1.0;
    switch (prm.derivative) {
        case SpaceDerivative::frac_laplacian_beta: {
            const auto E = extend_field(frac_laplacian(f, prm.beta), prm.s, levels);
            G = select_field(E, FieldSelector::value);
            c = prm.beta;
            break;
        }
        case SpaceDerivative::dt:
            G = select_field(extend_field(f, prm.s, levels, {true, false}), FieldSelector::dt);
            break;
        case SpaceDerivative::grad_x:
            G = select_field(extend_field(f, prm.s, levels, {false, true}), FieldSelector::grad_x);
            break;
    }
    const double p = prm.p, q = prm.q;
    const bool qinf = std::isinf(q), pinf = std::isinf(p);
    const double e = (qinf ? 0.0 : -1.0 / q) - prm.alpha + c;  // exponent of t
    const std::size_t M = levels.size();
    const std::size_t P = f.size();
    const double vol = f.spec().cell_volume();

    if (prm.kind == SpaceKind::triebel) {
        double outer = 0;
        for (std::size_t j = 0; j < P; ++j) {
            double inner = 0;
            for (std::size_t i = 0; i < M; ++i) {
                const double t = levels.t[i];
                const double v = std::pow(t, e) * std::abs(G.values[i][j]);
                if (qinf)
                    inner = std::max(inner, v);
                else
                    inner += levels.w[i] * t * std::pow(v, q);  // dt = t dt/t
            }
            const double Ix = qinf ? inner : std::pow(inner, 1.0 / q);
            outer += std::pow(Ix, p);
        }
        return std::pow(outer * vol, 1.0 / p);
    }

    double outer = 0;
    for (std::size_t i = 0; i < M; ++i) {
        const double t = levels.t[i];
        double J = 0;
        for (std::size_t j = 0; j < P; ++j) {
            const double v = std::pow(t, e) * std::abs(G.values[i][j]);
            if (pinf)
                J = std::max(J, v);
            else
                J += std::pow(v, p);
        }
        if (!pinf) J = std::pow(J * vol, 1.0 / p);
        if (qinf)
            outer = std::max(outer, J);
        else
            outer += levels.w[i] * t * std::pow(J, q);
    }
    return qinf ? outer : std::pow(outer, 1.0 / q);
}

}  // namespace fracharm
