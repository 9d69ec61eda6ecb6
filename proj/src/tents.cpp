#include "fracharm/tents.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fracharm {

LevelField select_field(const ExtensionField& E, FieldSelector sel) {
    LevelField out{E.spec, E.levels, {}};
    const bool need_t = sel == FieldSelector::dt || sel == FieldSelector::t_dt ||
                        sel == FieldSelector::grad_full;
    const bool need_x = sel == FieldSelector::grad_x || sel == FieldSelector::grad_full;
    if (need_t && !E.has_t()) throw std::invalid_argument("selected field needs dF/dt levels");
    if (need_x && !E.has_x()) throw std::invalid_argument("selected field needs grad_x F levels");
    for (std::size_t i = 0; i < E.levels.size(); ++i) {
        const double t = E.levels.t[i];
        switch (sel) {
            case FieldSelector::value:
                out.values.push_back(E.F[i]);
                break;
            case FieldSelector::dt:
                out.values.push_back(E.dt[i]);
                break;
            case FieldSelector::t_dt:
                out.values.push_back(t * E.dt[i]);
                break;
            case FieldSelector::grad_x:
            case FieldSelector::grad_full: {
                GridFunction g(E.spec);
                for (std::size_t j = 0; j < g.size(); ++j) {
                    double s2 = 0;
                    for (const auto& c : E.dx[i]) s2 += c[j] * c[j];
                    if (sel == FieldSelector::grad_full) s2 += E.dt[i][j] * E.dt[i][j];
                    g[j] = std::sqrt(s2);
                }
                out.values.push_back(std::move(g));
                break;
            }
        }
    }
    return out;
}

GridFunction square_function(const LevelField& G, SquareMode mode, double weight) {
    const auto& spec = G.spec;
    GridFunction acc(spec);
    for (std::size_t i = 0; i < G.levels.size(); ++i) {
        const double t = G.levels.t[i];
        // int g dt = int g t dt/t
        const double wt = G.levels.w[i] * std::pow(t, weight + 1.0);
        GridFunction sq(spec);
        for (std::size_t j = 0; j < sq.size(); ++j) sq[j] = G.values[i][j] * G.values[i][j];
        if (mode == SquareMode::regular) {
            for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += wt * sq[j];
        } else {
            const auto runs = ball_runs(spec, t, true);
            BallSummer summer(sq);
            const double vol = spec.cell_volume();
            for (std::size_t j = 0; j < acc.size(); ++j) acc[j] += wt * vol * summer.sum(j, runs);
        }
    }
    for (double& v : acc.values()) v = std::sqrt(v);
    return acc;
}

GridFunction square_function(const LevelField& G, SquareMode mode) {
    const double w = mode == SquareMode::regular ? -1.0 : -(G.spec.n + 1.0);
    return square_function(G, mode, w);
}

double carleson_sup(const LevelField& G, double weight, const TentFamily& tents) {
    const auto& spec = G.spec;
    const double vol = spec.cell_volume();
    std::vector<BallSummer> summers;
    for (const auto& g : G.values) summers.emplace_back(g * g);
    double best = 0;
    for (double r : tents.radii) {
        const double ball = static_cast<double>(ball_count(ball_runs(spec, r, false))) * vol;
        std::vector<std::vector<BallRun>> runs;
        std::vector<double> wts;
        for (std::size_t i = 0; i < G.levels.size() && G.levels.t[i] < r; ++i) {
            const double t = G.levels.t[i];
            runs.push_back(ball_runs(spec, r - t, true));
            wts.push_back(G.levels.w[i] * std::pow(t, weight + 1.0) * vol);
        }
        for (auto c : tents.centers) {
            double acc = 0;
            for (std::size_t i = 0; i < runs.size(); ++i) acc += wts[i] * summers[i].sum(c, runs[i]);
            best = std::max(best, acc / ball);
        }
    }
    return std::sqrt(best);
}

double carleson_sup(const LevelField& G, double weight) {
    return carleson_sup(G, weight, TentFamily::standard(G.spec));
}

TentPairing tent_pairing_bound_check(const LevelField& Phi, const LevelField& G) {
    if (!(Phi.spec == G.spec) || Phi.levels.t != G.levels.t)
        throw std::invalid_argument("tent_pairing_bound_check needs fields on identical levels");
    TentPairing out;
    const double vol = Phi.spec.cell_volume();
    double lhs = 0;
    for (std::size_t i = 0; i < Phi.levels.size(); ++i) {
        double s = 0;
        for (std::size_t j = 0; j < Phi.values[i].size(); ++j) s += Phi.values[i][j] * G.values[i][j];
        lhs += Phi.levels.w[i] * Phi.levels.t[i] * s * vol;
    }
    out.lhs = std::abs(lhs);
    out.carleson = carleson_sup(Phi, 1.0);
    const auto S = square_function(G, SquareMode::nontangential);
    double l1 = 0;
    for (double v : S.values()) l1 += v;
    out.square_l1 = l1 * vol;
    const double rhs = out.carleson * out.square_l1;
    out.ratio = rhs > 0 ? out.lhs / rhs : (out.lhs > 0 ? kInf : 0.0);
    return out;
}

namespace {

// Range maxima over one periodic row, unrolled to length 2N so a window
// [c + lo, c + hi] with -N/2 <= lo <= hi < N/2 is a plain interval.
class RowMax {
public:
    explicit RowMax(const double* row, int N) : N_(N) {
        const int len = 2 * N;
        table_.emplace_back(len);
        for (int k = 0; k < len; ++k) table_[0][k] = std::abs(row[k % N]);
        for (int j = 1; (1 << j) <= len; ++j) {
            const auto& prev = table_[j - 1];
            std::vector<double> cur(len - (1 << j) + 1);
            for (std::size_t k = 0; k < cur.size(); ++k)
                cur[k] = std::max(prev[k], prev[k + (1 << (j - 1))]);
            table_.push_back(std::move(cur));
        }
    }
    double max(int c, int lo, int hi) const {
        const int a = c + lo + N_ / 2, b = c + hi + N_ / 2;  // shifted into [0, 2N)
        int j = 0;
        while ((2 << j) <= b - a + 1) ++j;
        return std::max(table_[j][a], table_[j][b - (1 << j) + 1]);
    }

private:
    int N_;
    std::vector<std::vector<double>> table_;
};

}  // namespace

GridFunction nontangential_maximal(const LevelField& G) {
    const auto& spec = G.spec;
    const int N = spec.N;
    const int rows = spec.n == 1 ? 1 : N;
    GridFunction out(spec);
    for (std::size_t i = 0; i < G.levels.size(); ++i) {
        const auto runs = ball_runs(spec, G.levels.t[i], true);
        if (runs.empty()) continue;
        std::vector<double> shifted(static_cast<std::size_t>(N));
        std::vector<RowMax> rm;
        rm.reserve(rows);
        for (int r = 0; r < rows; ++r) {
            // Pre-rotate by N/2 so that RowMax indices stay non-negative.
            for (int k = 0; k < N; ++k)
                shifted[k] = G.values[i][static_cast<std::size_t>(r) * (spec.n == 1 ? 0 : N) +
                                         ((k - N / 2) % N + N) % N];
            rm.emplace_back(shifted.data(), N);
        }
        for (std::size_t j = 0; j < out.size(); ++j) {
            const int c0 = spec.n == 1 ? 0 : static_cast<int>(j / N);
            const int c1 = spec.n == 1 ? static_cast<int>(j) : static_cast<int>(j % N);
            double best = out[j];
            for (const auto& run : runs) {
                const int row = spec.n == 1 ? 0 : ((c0 + run.row) % N + N) % N;
                best = std::max(best, rm[row].max(c1, run.lo, run.hi));
            }
            out[j] = best;
        }
    }
    return out;
}

}  // namespace fracharm
