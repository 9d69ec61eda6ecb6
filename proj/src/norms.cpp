#include "fracharm/norms.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <stdexcept>

namespace fracharm {

double lp_norm(const GridFunction& f, double p) {
    if (!(p >= 1)) throw std::invalid_argument("lp_norm needs p >= 1");
    if (std::isinf(p)) {
        double m = 0;
        for (double v : f.values()) m = std::max(m, std::abs(v));
        return m;
    }
    double s = 0;
    if (p == 2.0) {
        for (double v : f.values()) s += v * v;
        return std::sqrt(s * f.spec().cell_volume());
    }
    for (double v : f.values()) s += std::pow(std::abs(v), p);
    return std::pow(s * f.spec().cell_volume(), 1.0 / p);
}

void LorentzExponents::validate() const {
    if (std::isinf(p)) {
        if (!std::isinf(q)) throw std::invalid_argument("Lorentz exponent p = inf requires q = inf");
        return;
    }
    if (!(p > 1)) throw std::invalid_argument("Lorentz exponent p must lie in (1, inf]");
    if (!(q >= 1)) throw std::invalid_argument("Lorentz exponent q must lie in [1, inf]");
}

double lorentz_norm(const GridFunction& f, LorentzExponents e) {
    e.validate();
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(f[i]);
    std::sort(v.begin(), v.end(), std::greater<>());
    const double h = f.spec().cell_volume();
    if (std::isinf(e.p)) return v.empty() ? 0.0 : v.front();
    if (std::isinf(e.q)) {
        // sup_t t^{1/p} f*(t); on each step the sup sits at the right end.
        double m = 0;
        for (std::size_t i = 0; i < v.size(); ++i)
            m = std::max(m, v[i] * std::pow((i + 1) * h, 1.0 / e.p));
        return m;
    }
    // int_a^b t^{q/p - 1} dt = (p/q)(b^{q/p} - a^{q/p}).
    const double ex = e.q / e.p;
    double acc = 0;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] == 0) break;
        double piece;
        if (i == 0) {
            piece = std::pow(h, ex);
        } else {
            const double a = static_cast<double>(i) * h;
            piece = std::pow(a, ex) * std::expm1(ex * std::log1p(1.0 / static_cast<double>(i)));
        }
        acc += std::pow(v[i], e.q) * piece;
    }
    return std::pow(acc * e.p / e.q, 1.0 / e.q);
}

namespace {

// Torus distance in cells between offsets along one axis.
int wrap_cells(int d, int N) {
    d = ((d % N) + N) % N;
    return std::min(d, N - d);
}

}  // namespace

double slobodeckij_seminorm(const GridFunction& f, double nu, double p) {
    if (!(nu > 0 && nu < 1)) throw std::invalid_argument("slobodeckij_seminorm needs nu in (0,1)");
    if (!(p >= 1) || std::isinf(p)) throw std::invalid_argument("slobodeckij_seminorm needs p in [1, inf)");
    const auto& spec = f.spec();
    const int N = spec.N, n = spec.n;
    const double h = spec.h();
    if (n == 2 && N > 96) throw std::invalid_argument("slobodeckij_seminorm in 2-D needs N <= 96");
    const double expo = n + nu * p;
    const double vol2 = spec.cell_volume() * spec.cell_volume();
    auto powp = [p](double d) { return p == 2.0 ? d * d : std::pow(d, p); };
    double acc = 0;
    if (n == 1) {
        std::vector<double> w(N, 0.0);
        for (int m = 1; m < N; ++m) w[m] = vol2 * std::pow(h * wrap_cells(m, N), -expo);
        for (int i = 0; i < N; ++i)
            for (int m = 1; m < N; ++m) acc += w[m] * powp(std::abs(f[i] - f.at(i + m)));
    } else {
        std::vector<double> w(static_cast<std::size_t>(N) * N, 0.0);
        for (int a = 0; a < N; ++a)
            for (int b = 0; b < N; ++b) {
                if (a == 0 && b == 0) continue;
                const double d = h * std::hypot(wrap_cells(a, N), wrap_cells(b, N));
                w[static_cast<std::size_t>(a) * N + b] = vol2 * std::pow(d, -expo);
            }
        for (int i0 = 0; i0 < N; ++i0)
            for (int i1 = 0; i1 < N; ++i1) {
                const double fi = f.at(i0, i1);
                for (int a = 0; a < N; ++a) {
                    const std::size_t row = static_cast<std::size_t>((i0 + a) % N) * N;
                    const double* wr = &w[static_cast<std::size_t>(a) * N];
                    for (int b = 0; b < N; ++b)
                        acc += wr[b] * powp(std::abs(fi - f[row + (i1 + b) % N]));
                }
            }
    }
    return std::pow(acc, 1.0 / p);
}

double holder_seminorm(const GridFunction& f, double nu) {
    if (!(nu > 0 && nu <= 1)) throw std::invalid_argument("holder_seminorm needs nu in (0,1]");
    const auto& spec = f.spec();
    if (nu == 1.0) {
        const auto g = spectral_gradient(f);
        double m = 0;
        for (std::size_t j = 0; j < f.size(); ++j) {
            double s2 = 0;
            for (const auto& c : g) s2 += c[j] * c[j];
            m = std::max(m, std::sqrt(s2));
        }
        return m;
    }
    const int N = spec.N;
    const double h = spec.h();
    double best = 0;
    if (spec.n == 1) {
        std::vector<double> w(N, 0.0);
        for (int m = 1; m < N; ++m) w[m] = std::pow(h * wrap_cells(m, N), -nu);
        for (int i = 0; i < N; ++i)
            for (int m = 1; m < N; ++m) best = std::max(best, std::abs(f[i] - f.at(i + m)) * w[m]);
        return best;
    }
    std::vector<double> w(static_cast<std::size_t>(N) * N, 0.0);
    for (int a = 0; a < N; ++a)
        for (int b = 0; b < N; ++b)
            if (a || b)
                w[static_cast<std::size_t>(a) * N + b] =
                    std::pow(h * std::hypot(wrap_cells(a, N), wrap_cells(b, N)), -nu);
    for (int i0 = 0; i0 < N; ++i0)
        for (int i1 = 0; i1 < N; ++i1) {
            const double fi = f.at(i0, i1);
            for (int a = 0; a < N; ++a)
                for (int b = 0; b < N; ++b)
                    best = std::max(best, std::abs(fi - f.at(i0 + a, i1 + b)) *
                                              w[static_cast<std::size_t>(a) * N + b]);
        }
    return best;
}

// ---- balls ----

std::vector<BallRun> ball_runs(const GridSpec& spec, double r, bool strict) {
    const int N = spec.N;
    const double h = spec.h();
    auto inside = [&](double d) { return strict ? d < r : d <= r * (1 + 1e-12); };
    std::vector<BallRun> runs;
    if (spec.n == 1) {
        int m = 0;
        while (m + 1 <= N / 2 && inside(h * (m + 1))) ++m;
        if (!inside(0.0)) return runs;
        runs.push_back({0, std::max(-m, -N / 2), std::min(m, N / 2 - 1)});
        return runs;
    }
    for (int a = -N / 2; a < N / 2; ++a) {
        const double da = h * std::abs(a);
        if (!inside(da)) continue;
        int w = 0;
        while (w + 1 <= N / 2 && inside(h * std::hypot(a, w + 1))) ++w;
        runs.push_back({a, std::max(-w, -N / 2), std::min(w, N / 2 - 1)});
    }
    return runs;
}

std::size_t ball_count(const std::vector<BallRun>& runs) {
    std::size_t c = 0;
    for (const auto& r : runs) c += static_cast<std::size_t>(r.hi - r.lo + 1);
    return c;
}

BallSummer::BallSummer(const GridFunction& g) : spec_(g.spec()) {
    const int N = spec_.N;
    const int rows = spec_.n == 1 ? 1 : N;
    const std::size_t stride = 3 * static_cast<std::size_t>(N) + 1;
    prefix_.assign(stride * rows, 0.0);
    for (int r = 0; r < rows; ++r) {
        double* p = &prefix_[stride * r];
        for (int k = 0; k < 3 * N; ++k)
            p[k + 1] = p[k] + g[static_cast<std::size_t>(r) * (spec_.n == 1 ? 0 : N) + (k % N)];
    }
}

double BallSummer::sum(std::size_t center, const std::vector<BallRun>& runs) const {
    const int N = spec_.N;
    const std::size_t stride = 3 * static_cast<std::size_t>(N) + 1;
    const int c0 = spec_.n == 1 ? 0 : static_cast<int>(center / N);
    const int c1 = spec_.n == 1 ? static_cast<int>(center) : static_cast<int>(center % N);
    double acc = 0;
    for (const auto& run : runs) {
        const int row = spec_.n == 1 ? 0 : ((c0 + run.row) % N + N) % N;
        const double* p = &prefix_[stride * row];
        acc += p[c1 + run.hi + N + 1] - p[c1 + run.lo + N];
    }
    return acc;
}

TentFamily TentFamily::dyadic(const GridSpec& spec, int stride) {
    if (stride < 1) throw std::invalid_argument("tent family stride must be >= 1");
    TentFamily T;
    const int N = spec.N;
    for (int m = 1; m <= N / 2; m *= 2) T.radii.push_back(m * spec.h());
    if (spec.n == 1) {
        for (int i = 0; i < N; i += stride) T.centers.push_back(i);
    } else {
        for (int i0 = 0; i0 < N; i0 += stride)
            for (int i1 = 0; i1 < N; i1 += stride)
                T.centers.push_back(static_cast<std::size_t>(i0) * N + i1);
    }
    return T;
}

TentFamily TentFamily::standard(const GridSpec& spec) {
    return dyadic(spec, 1);
}

TentFamily TentFamily::exhaustive(const GridSpec& spec) {
    TentFamily T = dyadic(spec, 1);
    T.radii.clear();
    for (int m = 0; m <= spec.N / 2; ++m) T.radii.push_back(m * spec.h());
    return T;
}

namespace {

// f tiled onto [-N/2, 3N/2)^n so every ball run is a contiguous slice.
class Tiled {
public:
    explicit Tiled(const GridFunction& f) : spec_(f.spec()), W_(2 * spec_.N) {
        const int N = spec_.N, h = N / 2;
        const int rows = spec_.n == 1 ? 1 : W_;
        data_.resize(static_cast<std::size_t>(rows) * W_);
        for (int r = 0; r < rows; ++r)
            for (int c = 0; c < W_; ++c)
                data_[static_cast<std::size_t>(r) * W_ + c] =
                    spec_.n == 1 ? f.at(c - h) : f.at(r - h, c - h);
    }

    /// Pointer to the tiled row at offset `row` from the center, column origin at the center.
    const double* row(std::size_t center, int row) const {
        const int N = spec_.N, h = N / 2;
        if (spec_.n == 1) return &data_[static_cast<std::size_t>(static_cast<int>(center) + h)];
        const int c0 = static_cast<int>(center) / N, c1 = static_cast<int>(center) % N;
        return &data_[static_cast<std::size_t>(c0 + row + h) * W_ + (c1 + h)];
    }

private:
    GridSpec spec_;
    int W_;
    std::vector<double> data_;
};

double ball_oscillation(const Tiled& T, std::size_t center, const std::vector<BallRun>& runs,
                        double cnt) {
    double sum = 0;
    for (const auto& run : runs) {
        const double* p = T.row(center, run.row);
        for (int b = run.lo; b <= run.hi; ++b) sum += p[b];
    }
    const double avg = sum / cnt;
    double osc = 0;
    for (const auto& run : runs) {
        const double* p = T.row(center, run.row);
        for (int b = run.lo; b <= run.hi; ++b) osc += std::abs(p[b] - avg);
    }
    return osc / cnt;
}

}  // namespace

double bmo_seminorm(const GridFunction& f, const TentFamily& tents) {
    const Tiled T(f);
    double best = 0;
    for (double r : tents.radii) {
        const auto runs = ball_runs(f.spec(), r, false);
        const double cnt = static_cast<double>(ball_count(runs));
        for (auto c : tents.centers) best = std::max(best, ball_oscillation(T, c, runs, cnt));
    }
    return best;
}

double bmo_seminorm(const GridFunction& f) { return bmo_seminorm(f, TentFamily::standard(f.spec())); }

GridFunction maximal_function(const GridFunction& f, const std::vector<double>& radii) {
    const auto& spec = f.spec();
    const GridFunction af = abs(f);
    BallSummer summer(af);
    GridFunction M = af;  // the cell itself
    for (double r : radii) {
        const auto runs = ball_runs(spec, r, false);
        const double cnt = static_cast<double>(ball_count(runs));
        for (std::size_t i = 0; i < M.size(); ++i) M[i] = std::max(M[i], summer.sum(i, runs) / cnt);
    }
    return M;
}

GridFunction maximal_function(const GridFunction& f) {
    return maximal_function(f, TentFamily::dyadic(f.spec(), 1).radii);
}

}  // namespace fracharm
