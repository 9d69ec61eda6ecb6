#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "fracharm/cli.hpp"
#include "fracharm/multiplier_ops.hpp"
#include "fracharm/norms.hpp"
#include "fracharm/poisson_symbol.hpp"
#include "fracharm/singular_ops.hpp"

namespace fracharm::cli {

namespace {

constexpr double kSpectralTol = 1e-10;

double rel_l2(const GridFunction& got, const GridFunction& want) {
    return lp_norm(got - want, 2.0) / lp_norm(want, 2.0);
}

double rel_linf(const GridFunction& got, const GridFunction& want) {
    return lp_norm(got - want, kInf) / lp_norm(want, kInf);
}

struct Row {
    std::string name;
    int N;
    double error, tolerance;
};

GridFunction bandlimited(const GridSpec& spec, std::uint64_t seed) {
    const int K = std::min(4, spec.N / 2 - 1);
    return make_function(TestFunctionDescriptor::random_bandlimited(seed, K), spec);
}

// Gaussian of width L/16 on grids that resolve it, a single sine below N = 512.
GridFunction oracle_input(const GridSpec& spec) {
    if (spec.N < 512) return make_function(TestFunctionDescriptor::sine({1, 0}), spec);
    return make_function(TestFunctionDescriptor::gaussian({spec.L / 2, spec.L / 2}, spec.L / 16), spec);
}

std::vector<Row> spectral_rows(int N1, int N2) {
    std::vector<Row> rows;
    const auto s1 = GridSpec::make(1, N1, 1.0);
    const auto s2 = GridSpec::make(2, N2, 1.0);
    const auto f = bandlimited(s1, 11);
    const auto f2 = bandlimited(s2, 12);

    rows.push_back({"fft round trip", N1, rel_l2(fft_inverse(fft_forward(f)), f), kSpectralTol});
    rows.push_back({"H H = -Id", N1, rel_l2(hilbert(hilbert(f)), -1.0 * f), kSpectralTol});
    rows.push_back({"R1^2 + R2^2 = -Id", N2,
                    rel_l2(riesz_transform(riesz_transform(f2, 0), 0) +
                               riesz_transform(riesz_transform(f2, 1), 1),
                           -1.0 * f2),
                    kSpectralTol});
    rows.push_back({"semigroup 0.3 + 0.9", N1,
                    rel_l2(frac_laplacian(frac_laplacian(f, 0.3), 0.9), frac_laplacian(f, 1.2)),
                    kSpectralTol});
    rows.push_back({"I^s (-Delta)^{s/2} = Id", N1, rel_l2(riesz_potential(frac_laplacian(f, 0.7), 0.7), f),
                    kSpectralTol});
    double worst = 0;
    for (int j = 0; j < 2; ++j)
        for (int k = 0; k < 2; ++k) {
            const auto lhs = spectral_derivative(spectral_derivative(f2, j), k);
            const auto rhs = riesz_transform(riesz_transform(frac_laplacian(f2, 2.0), k), j);
            worst = std::max(worst, rel_l2(rhs, lhs));
        }
    rows.push_back({"d_j d_k = R_j R_k (-Delta)", N2, worst, kSpectralTol});
    rows.push_back({"div grad = -(-Delta)", N2,
                    rel_l2(spectral_derivative(spectral_derivative(f2, 0), 0) +
                               spectral_derivative(spectral_derivative(f2, 1), 1),
                           -1.0 * frac_laplacian(f2, 2.0)),
                    kSpectralTol});
    // int (-Delta)^{1/2} f g = int f (-Delta)^{1/2} g
    const auto g = bandlimited(s1, 13);
    double ab = 0, ba = 0, scale = 0;
    const auto Lf = frac_laplacian(f, 1.0), Lg = frac_laplacian(g, 1.0);
    for (std::size_t i = 0; i < f.size(); ++i) {
        ab += Lf.values()[i] * g.values()[i];
        ba += f.values()[i] * Lg.values()[i];
        scale += std::abs(Lf.values()[i] * g.values()[i]);
    }
    rows.push_back({"self-adjoint (-Delta)^{1/2}", N1, std::abs(ab - ba) / scale, kSpectralTol});
    return rows;
}

std::vector<Row> oracle_rows(int N, double tol) {
    std::vector<Row> rows;
    const auto spec = GridSpec::make(1, N, 1.0);
    const auto f = oracle_input(spec);
    for (double s : {0.3, 0.7, 1.5}) {
        char name[64];
        std::snprintf(name, sizeof name, "quadrature (-Delta)^{s/2}, s=%.1f", s);
        rows.push_back({name, N, rel_linf(frac_laplacian_quadrature(f, s).values, frac_laplacian(f, s)), tol});
    }
    rows.push_back({"quadrature Hilbert PV", N, rel_linf(hilbert_pv_quadrature(f).values, hilbert(f)), tol});
    const auto u = spec.N < 512 ? f : spectral_derivative(f, 0);
    rows.push_back({"quadrature I^s, s=0.5", N,
                    rel_linf(riesz_potential_quadrature(u, 0.5).values, riesz_potential(u, 0.5)), tol});
    return rows;
}

Row poisson_row() {
    const auto table = cached_poisson_symbol(1.0);
    double worst = 0;
    for (int i = 0; i <= 500; ++i) {
        const double r = 0.01 * i;
        const double want = std::exp(-2 * M_PI * r);
        worst = std::max(worst, std::abs(table->value(r) - want) / want);
    }
    return {"Poisson symbol s=1 vs exp(-2 pi r)", 0, worst, 1e-6};
}

}  // namespace

double oracle_tolerance(int N) { return std::min(1.0, 2e-2 * std::max(1.0, 512.0 / N)); }

int ops_check(const OpsCheckOptions& opt, std::ostream& out) {
    const auto t0 = std::chrono::steady_clock::now();
    std::vector<Row> rows = opt.N ? spectral_rows(*opt.N, *opt.N) : spectral_rows(256, 64);
    rows.push_back(poisson_row());
    const int No = opt.N.value_or(2048);
    for (auto& r : oracle_rows(No, opt.N ? oracle_tolerance(No) : 2e-2)) rows.push_back(r);

    bool all = true;
    char line[160];
    std::snprintf(line, sizeof line, "%-40s %6s %12s %12s  %s\n", "identity", "N", "error", "tolerance", "result");
    out << line;
    for (const auto& r : rows) {
        const bool ok = std::isfinite(r.error) && r.error <= r.tolerance;
        all = all && ok;
        std::snprintf(line, sizeof line, "%-40s %6s %12.3e %12.3e  %s\n", r.name.c_str(),
                      r.N ? std::to_string(r.N).c_str() : "-", r.error, r.tolerance, ok ? "PASS" : "FAIL");
        out << line;
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    std::snprintf(line, sizeof line, "%zu identities, %s, %.2f s\n", rows.size(), all ? "all pass" : "FAILURES", secs);
    out << line;
    return all ? kPass : kValidationFailure;
}

}  // namespace fracharm::cli
