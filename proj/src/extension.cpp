#include "fracharm/extension.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracharm/error.hpp"
#include "fracharm/multiplier_ops.hpp"

namespace fracharm {

namespace {

double l2(const GridFunction& f) {
    double s = 0;
    for (double v : f.values()) s += v * v;
    return std::sqrt(s * f.spec().cell_volume());
}

double dot(const GridFunction& a, const GridFunction& b) {
    double s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s * a.spec().cell_volume();
}

std::vector<double> abs_xi(const GridSpec& spec) {
    std::vector<double> r(spec.size());
    for (std::size_t i = 0; i < r.size(); ++i) {
        const auto k = frequency_vector(spec, i);
        r[i] = std::hypot(static_cast<double>(k[0]), static_cast<double>(k[1])) / spec.L;
    }
    return r;
}

// Real part of ifft(mult .* S), asserting a negligible imaginary part.
GridFunction synthesize(const Spectrum& S, const std::vector<std::complex<double>>& mult,
                        const char* op) {
    Spectrum T = S;
    for (std::size_t i = 0; i < mult.size(); ++i) T.coeffs[i] *= mult[i];
    auto z = fft_inverse_complex(T);
    std::vector<double> re(z.size());
    double im2 = 0, re2 = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        re[i] = z[i].real();
        re2 += re[i] * re[i];
        im2 += z[i].imag() * z[i].imag();
        if (!std::isfinite(re[i])) throw NumericalError(op, "non-finite field value");
    }
    if (std::sqrt(im2) > 1e-10 * std::max(std::sqrt(re2), 1e-300) && im2 > 1e-300)
        throw NumericalError(op, "imaginary residual in extension field");
    return GridFunction(S.spec, std::move(re));
}

void check_symbol_range(const PoissonSymbol& P, const GridSpec& spec, double t_min) {
    if (!P.in_range(t_min / spec.L)) {
        std::ostringstream os;
        os << "height t=" << t_min << " gives symbol argument " << t_min / spec.L
           << " below the table range " << P.options().r_min;
        throw std::invalid_argument(os.str());
    }
}

}  // namespace

TLevels TLevels::log_spaced(double t_min, double t_max, int M) {
    if (!(t_min > 0 && t_max > t_min) || M < 2)
        throw std::invalid_argument("TLevels needs 0 < t_min < t_max and M >= 2");
    TLevels lv;
    const double a = std::log(t_min), b = std::log(t_max);
    const double du = (b - a) / (M - 1);
    for (int i = 0; i < M; ++i) {
        lv.t.push_back(i == M - 1 ? t_max : std::exp(a + i * du));
        lv.w.push_back((i == 0 || i == M - 1) ? 0.5 * du : du);
    }
    lv.t.front() = t_min;
    return lv;
}

TLevels TLevels::refined() const {
    return log_spaced(t.front(), t.back(), 2 * static_cast<int>(t.size()) - 1);
}

double TLevels::spacing() const {
    if (t.size() < 2) return 0.0;
    return (std::log(t.back()) - std::log(t.front())) / static_cast<double>(t.size() - 1);
}

void TLevels::validate(const GridSpec& spec) const {
    if (t.size() < 16) throw std::invalid_argument("TLevels needs M >= 16 levels");
    if (t.front() < spec.h() / 8.0 * (1 - 1e-12))
        throw std::invalid_argument("TLevels t_1 must be >= h/8");
    if (t.back() > 4.0 * spec.L * (1 + 1e-12))
        throw std::invalid_argument("TLevels t_M must be <= 4L");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw std::invalid_argument("TLevels must be ascending");
}

ExtensionField extend_field(const GridFunction& f, double s, const TLevels& levels,
                            DerivativeFlags flags) {
    const auto& spec = f.spec();
    levels.validate(spec);
    auto P = cached_poisson_symbol(s);
    check_symbol_range(*P, spec, levels.t.front());

    ExtensionField E;
    E.spec = spec;
    E.s = s;
    E.levels = levels;
    const Spectrum S = fft_forward(f);
    const auto r = abs_xi(spec);
    const std::size_t total = spec.size();
    std::vector<std::complex<double>> mult(total);
    for (double t : levels.t) {
        for (std::size_t i = 0; i < total; ++i) mult[i] = P->value(t * r[i]);
        E.F.push_back(synthesize(S, mult, "extend_field"));
        if (flags.x) {
            std::vector<GridFunction> grad;
            for (int a = 0; a < spec.n; ++a) {
                std::vector<std::complex<double>> dm(total);
                for (std::size_t i = 0; i < total; ++i) {
                    if (is_nyquist(spec, i)) continue;
                    const auto k = frequency_vector(spec, i);
                    dm[i] = mult[i] * std::complex<double>(0.0, 2.0 * M_PI * k[a] / spec.L);
                }
                grad.push_back(synthesize(S, dm, "extend_field"));
            }
            E.dx.push_back(std::move(grad));
        }
        if (flags.t) {
            std::vector<std::complex<double>> dm(total);
            for (std::size_t i = 0; i < total; ++i) dm[i] = P->t_derivative(t * r[i]) / t;
            E.dt.push_back(synthesize(S, dm, "extend_field"));
        }
    }
    return E;
}

GridFunction extend_at(const GridFunction& f, double s, double t) {
    auto P = cached_poisson_symbol(s);
    const auto r = abs_xi(f.spec());
    std::vector<std::complex<double>> mult(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) mult[i] = P->value(t * r[i]);
    return synthesize(fft_forward(f), mult, "extend_at");
}

GridFunction extend_dt_at(const GridFunction& f, double s, double t) {
    if (!(t > 0)) throw std::invalid_argument("extend_dt_at needs t > 0");
    auto P = cached_poisson_symbol(s);
    const auto r = abs_xi(f.spec());
    std::vector<std::complex<double>> mult(r.size());
    for (std::size_t i = 0; i < r.size(); ++i) mult[i] = P->t_derivative(t * r[i]) / t;
    return synthesize(fft_forward(f), mult, "extend_dt_at");
}

BoundaryLimitResult boundary_limit_check(const GridFunction& f, double s,
                                         const std::vector<double>& small_ts) {
    const auto& spec = f.spec();
    const double h = spec.h();
    if (small_ts.empty()) throw std::invalid_argument("boundary_limit_check needs at least one t");
    for (double t : small_ts)
        if (t < h / 4 * (1 - 1e-12) || t > 8 * h * (1 + 1e-12))
            throw std::invalid_argument("boundary_limit_check: heights must lie in [h/4, 8h]");
    const GridFunction Lf = frac_laplacian(f, s);
    const double nL = l2(Lf);
    if (!(nL > 1e-12 * std::max(l2(f), 1e-300)))
        throw std::invalid_argument("boundary_limit_check: (-Delta)^{s/2} f is negligible");

    BoundaryLimitResult res;
    res.closed_form = boundary_constant_closed_form(s);
    for (double t : small_ts) {
        GridFunction g = extend_dt_at(f, s, t);
        g *= -std::pow(t, 1.0 - s);
        const double c = dot(g, Lf) / (nL * nL);
        GridFunction diff = g - c * Lf;
        res.ts.push_back(t);
        res.c_t.push_back(c);
        res.residual.push_back(l2(diff) / (std::abs(c) * nL));
    }
    const std::size_t m = res.ts.size();
    const double p = 2.0 - s;
    if (m == 1) {
        res.c = res.c_t[0];
    } else if (m == 2) {
        const double a1 = std::pow(res.ts[0], p), a2 = std::pow(res.ts[1], p);
        res.c = (res.c_t[1] * a1 - res.c_t[0] * a2) / (a1 - a2);
    } else {
        // Least squares on {1, t^{2-s}, t^2}, columns scaled to unit size for conditioning.
        const double tmax = *std::max_element(res.ts.begin(), res.ts.end());
        double A[3][3] = {}, b[3] = {};
        for (std::size_t i = 0; i < m; ++i) {
            const double x = res.ts[i] / tmax;
            const double row[3] = {1.0, std::pow(x, p), x * x};
            for (int a = 0; a < 3; ++a) {
                b[a] += row[a] * res.c_t[i];
                for (int c = 0; c < 3; ++c) A[a][c] += row[a] * row[c];
            }
        }
        // Gaussian elimination with partial pivoting on the 3x3 normal equations.
        int idx[3] = {0, 1, 2};
        for (int col = 0; col < 3; ++col) {
            int piv = col;
            for (int rr = col + 1; rr < 3; ++rr)
                if (std::abs(A[idx[rr]][col]) > std::abs(A[idx[piv]][col])) piv = rr;
            std::swap(idx[col], idx[piv]);
            for (int rr = col + 1; rr < 3; ++rr) {
                const double fct = A[idx[rr]][col] / A[idx[col]][col];
                for (int c = col; c < 3; ++c) A[idx[rr]][c] -= fct * A[idx[col]][c];
                b[idx[rr]] -= fct * b[idx[col]];
            }
        }
        double x[3];
        for (int rr = 2; rr >= 0; --rr) {
            double acc = b[idx[rr]];
            for (int c = rr + 1; c < 3; ++c) acc -= A[idx[rr]][c] * x[c];
            x[rr] = acc / A[idx[rr]][rr];
        }
        res.c = x[0];
    }
    if (!std::isfinite(res.c)) throw NumericalError("boundary_limit_check", "non-finite fit");
    return res;
}

HarmonicityResidual s_harmonicity_residual(const ExtensionField& E) {
    const std::size_t M = E.levels.size();
    if (M < 3) throw std::invalid_argument("s_harmonicity_residual needs at least 3 levels");
    const auto& spec = E.spec;
    const double s = E.s;
    const auto& t = E.levels.t;
    HarmonicityResidual out;
    for (std::size_t i = 1; i + 1 < M; ++i) {
        const double um = std::log(t[i - 1]), u0 = std::log(t[i]), up = std::log(t[i + 1]);
        const double wp = std::exp(-s * 0.5 * (u0 + up)) / (up - u0);
        const double wm = std::exp(-s * 0.5 * (u0 + um)) / (u0 - um);
        const double scale = 1.0 / (t[i] * 0.5 * (up - um));
        const GridFunction lap = -1.0 * frac_laplacian(E.F[i], 2.0);
        GridFunction R(spec);
        const double ts = std::pow(t[i], 1.0 - s);
        for (std::size_t j = 0; j < R.size(); ++j) {
            const double flux = wp * (E.F[i + 1][j] - E.F[i][j]) - wm * (E.F[i][j] - E.F[i - 1][j]);
            R[j] = ts * lap[j] + scale * flux;
        }
        // Normalization uses the exact gradient fields when present.
        double g2 = 0;
        const auto grad = E.has_x() ? E.dx[i] : spectral_gradient(E.F[i]);
        for (const auto& gx : grad)
            for (double v : gx.values()) g2 += v * v;
        if (E.has_t()) {
            for (double v : E.dt[i].values()) g2 += v * v;
        } else {
            const double inv = 1.0 / (t[i + 1] - t[i - 1]);
            for (std::size_t j = 0; j < R.size(); ++j) {
                const double d = (E.F[i + 1][j] - E.F[i - 1][j]) * inv;
                g2 += d * d;
            }
        }
        const double gn = ts * std::sqrt(g2 * spec.cell_volume());
        out.t.push_back(t[i]);
        out.residual.push_back(gn > 0 ? l2(R) / gn : 0.0);
    }
    return out;
}

DecayProfile decay_profile(const ExtensionField& E, int k) {
    if (k != 0 && k != 1) throw std::invalid_argument("decay_profile supports k in {0,1}");
    if (k == 1 && !(E.has_t() && E.has_x()))
        throw std::invalid_argument("decay_profile k=1 needs both derivative fields");
    const int n = E.spec.n;
    DecayProfile out;
    for (std::size_t i = 0; i < E.levels.size(); ++i) {
        const double t = E.levels.t[i];
        double sup = 0;
        for (std::size_t j = 0; j < E.spec.size(); ++j) {
            double v;
            if (k == 0) {
                v = std::abs(E.F[i][j]);
            } else {
                double g2 = E.dt[i][j] * E.dt[i][j];
                for (const auto& gx : E.dx[i]) g2 += gx[j] * gx[j];
                v = std::sqrt(g2);
            }
            sup = std::max(sup, v);
        }
        out.t.push_back(t);
        out.sup_scaled.push_back(std::pow(t, n + k) * sup);
        out.sup_plain.push_back(std::pow(t, k) * sup);
    }
    return out;
}

}  // namespace fracharm
