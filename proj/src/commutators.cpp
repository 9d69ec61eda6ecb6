#include "fracharm/commutators.hpp"

#include <cmath>
#include <stdexcept>

#include "fracharm/error.hpp"
#include "fracharm/multiplier_ops.hpp"

namespace fracharm {

namespace {

void require_same(const GridFunction& a, const GridFunction& b, const char* op) {
    if (!(a.spec() == b.spec())) throw std::invalid_argument(std::string(op) + ": grid mismatch");
}

double pairing(const GridFunction& a, const GridFunction& b) {
    double s = 0;
    for (std::size_t j = 0; j < a.size(); ++j) s += a[j] * b[j];
    return s * a.spec().cell_volume();
}

}  // namespace

GridFunction crw_commutator(const GridFunction& phi, const GridFunction& f, int axis) {
    require_same(phi, f, "crw_commutator");
    return riesz_transform(phi * f, axis) - phi * riesz_transform(f, axis);
}

GridFunction fl_commutator(const GridFunction& phi, const GridFunction& f, double s) {
    require_same(phi, f, "fl_commutator");
    if (!(s > 0 && s < 1)) throw std::invalid_argument("fl_commutator: s must lie in (0,1)");
    return frac_laplacian(phi * f, s) - phi * frac_laplacian(f, s);
}

ProjectedCommutator riesz_potential_commutator(const GridFunction& phi, const GridFunction& u,
                                               double s) {
    require_same(phi, u, "riesz_potential_commutator");
    if (!(s > 0 && s < phi.spec().n))
        throw std::invalid_argument("riesz_potential_commutator: s must lie in (0,n)");
    ProjectedCommutator out;
    const auto a = project_mean_zero(phi * u, &out.mass_phi_u);
    const auto b = project_mean_zero(u, &out.mass_u);
    out.value = riesz_potential(a, s) - phi * riesz_potential(b, s);
    return out;
}

GridFunction leibniz_defect(const GridFunction& f, const GridFunction& g, double s) {
    require_same(f, g, "leibniz_defect");
    if (!(s > 0 && s <= 1)) throw std::invalid_argument("leibniz_defect: s must lie in (0,1]");
    // Sum the two product terms first so that swapping f and g is bitwise symmetric.
    return frac_laplacian(f * g, s) - (frac_laplacian(f, s) * g + f * frac_laplacian(g, s));
}

std::pair<GridFunction, GridFunction> double_commutator_1d(const GridFunction& phi,
                                                           const GridFunction& f) {
    require_same(phi, f, "double_commutator_1d");
    if (phi.spec().n != 1) throw std::invalid_argument("double_commutator_1d: requires n = 1");
    const auto a = crw_commutator(phi, frac_laplacian(f, 1.0), 0);
    const auto b = crw_commutator(f, frac_laplacian(phi, 1.0), 0);
    return {a - b, hilbert(a + b)};
}

TLevels jacobian_levels(const GridSpec& spec) {
    return TLevels::log_spaced(spec.h() / 8.0, 4.0 * spec.L, 96);
}

JacobianPairing jacobian_pairing(const GridFunction& phi, const GridFunction& u1,
                                 const GridFunction& u2, JacobianMethod method,
                                 const TLevels* levels) {
    require_same(phi, u1, "jacobian_pairing");
    require_same(phi, u2, "jacobian_pairing");
    const auto& spec = phi.spec();
    if (spec.n != 2) throw std::invalid_argument("jacobian_pairing: requires n = 2");

    JacobianPairing out;
    if (method == JacobianMethod::boundary) {
        const auto g1 = spectral_gradient(u1);
        const auto g2 = spectral_gradient(u2);
        double s = 0;
        for (std::size_t j = 0; j < phi.size(); ++j)
            s += phi[j] * (g1[0][j] * g2[1][j] - g1[1][j] * g2[0][j]);
        out.value = s * spec.cell_volume();
        return out;
    }

    const TLevels lv = levels ? *levels : jacobian_levels(spec);
    lv.validate(spec);
    const DerivativeFlags both{true, true};
    const auto P = extend_field(phi, 1.0, lv, both);
    const auto A = extend_field(u1, 1.0, lv, both);
    const auto B = extend_field(u2, 1.0, lv, both);

    // g(t) = int det(grad Phi, grad U1, grad U2) dx, rows ordered (x1, x2, t).
    std::vector<double> g(lv.size());
    double peak = 0;
    for (std::size_t i = 0; i < lv.size(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < phi.size(); ++j) {
            const double p0 = P.dx[i][0][j], p1 = P.dx[i][1][j], p2 = P.dt[i][j];
            const double a0 = A.dx[i][0][j], a1 = A.dx[i][1][j], a2 = A.dt[i][j];
            const double b0 = B.dx[i][0][j], b1 = B.dx[i][1][j], b2 = B.dt[i][j];
            s += p0 * (a1 * b2 - a2 * b1) - p1 * (a0 * b2 - a2 * b0) + p2 * (a0 * b1 - a1 * b0);
        }
        g[i] = s * spec.cell_volume();
        peak = std::max(peak, std::abs(g[i]));
    }
    if (peak > 0 && std::abs(g.back()) > 1e-6 * peak)
        throw NumericalError("jacobian_pairing",
                             "integrand at t_M has not decayed below 1e-6 of its peak");
    double total = 0;
    for (std::size_t i = 0; i < lv.size(); ++i) total += lv.w[i] * lv.t[i] * g[i];
    // g is bounded as t -> 0, so the [0, t_1] slab is added as a rectangle; what is
    // left over is its first-order error plus the exponentially small tail.
    total += g.front() * lv.t.front();
    out.value = -total;
    const double slope = (g[1] - g[0]) / (lv.t[1] - lv.t[0]);
    out.truncation_remainder =
        0.5 * std::abs(slope) * lv.t.front() * lv.t.front() + std::abs(g.back()) * lv.t.back();
    return out;
}

HardyDuality hardy_duality_check(const GridFunction& phi, const GridFunction& f,
                                 const GridFunction& g, double s, LorentzExponents e) {
    require_same(phi, g, "hardy_duality_check");
    e.validate();
    const double pc = std::isinf(e.p) ? 1.0 : e.p / (e.p - 1.0);
    const double qc = e.q == 1.0 ? kInf : (std::isinf(e.q) ? 1.0 : e.q / (e.q - 1.0));
    if (!(pc > 1.0)) throw std::invalid_argument("hardy_duality_check: requires p in (1,inf)");
    HardyDuality out;
    out.lhs = std::abs(pairing(frac_laplacian(leibniz_defect(phi, f, s), s), g));
    out.rhs = lorentz_norm(frac_laplacian(phi, s), e) *
              lorentz_norm(frac_laplacian(f, s), {pc, qc}) * bmo_seminorm(g);
    out.ratio = out.rhs > 0 ? out.lhs / out.rhs : (out.lhs > 0 ? kInf : 0.0);
    return out;
}

}  // namespace fracharm
