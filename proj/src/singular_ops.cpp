#include "fracharm/singular_ops.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracharm/special.hpp"

namespace fracharm {

namespace {

using boost::math::quadrature::gauss_kronrod;

// Integral of |y|^{-a} over the square cell [-h/2, h/2]^2, a < 2.
double square_cell_power_integral(double a, double h) {
    auto g = [a](double th) { return std::pow(std::cos(th), a - 2.0); };
    const double angular = gauss_kronrod<double, 31>::integrate(g, 0.0, M_PI / 4, 10, 1e-14);
    return 8.0 / (2.0 - a) * std::pow(0.5 * h, 2.0 - a) * angular;
}

double l1_norm(const GridFunction& f) {
    double s = 0;
    for (double v : f.values()) s += std::abs(v);
    return s * f.spec().cell_volume();
}

double max_abs(const GridFunction& f) {
    double m = 0;
    for (double v : f.values()) m = std::max(m, std::abs(v));
    return m;
}

void require_mean_negligible(const GridFunction& f, const char* op) {
    double s2 = 0;
    for (double v : f.values()) s2 += v * v;
    const double rms = std::sqrt(s2 / static_cast<double>(f.size()));
    if (std::abs(f.mean()) > 1e-8 * rms) {
        std::ostringstream os;
        os << op << ": input mean " << f.mean() << " is not negligible";
        throw std::domain_error(os.str());
    }
}

}  // namespace

QuadratureResult frac_laplacian_quadrature(const GridFunction& f, double s,
                                           const QuadratureConfig& cfg) {
    if (!(s > 0 && s < 2)) throw std::invalid_argument("frac_laplacian_quadrature needs s in (0,2)");
    const auto rule = cfg.rule.value_or(SingularCellRule::second_difference_regular);
    if (rule == SingularCellRule::analytic_cell_average)
        throw std::invalid_argument("frac_laplacian_quadrature: analytic-cell-average rule is for potentials");
    const auto& spec = f.spec();
    const int n = spec.n, N = spec.N;
    const double h = spec.h(), L = spec.L;
    const double C = frac_laplacian_constant(n, s);
    const double sigma = n + s;
    GridFunction out(spec);
    QuadratureResult res{out, 0.0};

    if (n == 1) {
        // -C * int_0^{L/2} D(y) K(y) dy, D the symmetric second difference.
        std::vector<double> w(N / 2 + 1, 0.0);
        for (int m = 1; m <= N / 2; ++m) {
            const double y = m * h;
            double K = std::pow(y, -sigma);
            if (!cfg.treat_as_compact) K += periodic_power_remainder(sigma, y, L);
            w[m] = h * K * (m == N / 2 ? 0.5 : 1.0);
        }
        const double cell = 2.0 * std::pow(0.5 * h, 3.0 - sigma) / (3.0 - sigma);
        for (int i = 0; i < N; ++i) {
            const double fi = f[i];
            double acc = 0;
            for (int m = 1; m <= N / 2; ++m) acc += w[m] * (f.at(i + m) + f.at(i - m) - 2.0 * fi);
            double val = -C * acc;
            if (rule == SingularCellRule::second_difference_regular) {
                const double fpp = (f.at(i + 1) + f.at(i - 1) - 2.0 * fi) / (h * h);
                val += -0.5 * C * fpp * cell;
            }
            res.values[i] = val;
        }
        if (cfg.treat_as_compact) res.tail_bound = 2.0 * C * max_abs(f) * std::pow(0.5 * L, -s) / s;
        return res;
    }

    if (!cfg.treat_as_compact)
        throw std::invalid_argument("frac_laplacian_quadrature: periodized kernel is 1-D only");
    // 2-D: offsets over one period box, -1/2 C sum D(y)|y|^{-2-s} h^2.
    std::vector<double> K(static_cast<std::size_t>(N) * N, 0.0);
    for (int a = -N / 2; a < N / 2; ++a)
        for (int b = -N / 2; b < N / 2; ++b) {
            if (a == 0 && b == 0) continue;
            const double r = h * std::hypot(a, b);
            K[static_cast<std::size_t>(a + N / 2) * N + (b + N / 2)] = h * h * std::pow(r, -sigma);
        }
    // Taylor: D(y) ~ y^T H y; over the square the cross terms cancel.
    const double cell = 0.5 * square_cell_power_integral(s, h);
    for (int i0 = 0; i0 < N; ++i0)
        for (int i1 = 0; i1 < N; ++i1) {
            const double fi = f.at(i0, i1);
            double acc = 0;
            for (int a = -N / 2; a < N / 2; ++a)
                for (int b = -N / 2; b < N / 2; ++b) {
                    const double k = K[static_cast<std::size_t>(a + N / 2) * N + (b + N / 2)];
                    if (k == 0.0) continue;
                    acc += k * (f.at(i0 + a, i1 + b) + f.at(i0 - a, i1 - b) - 2.0 * fi);
                }
            double val = -0.5 * C * acc;
            if (rule == SingularCellRule::second_difference_regular) {
                const double lap = (f.at(i0 + 1, i1) + f.at(i0 - 1, i1) + f.at(i0, i1 + 1) +
                                    f.at(i0, i1 - 1) - 4.0 * fi) /
                                   (h * h);
                val += -0.5 * C * lap * cell;
            }
            res.values[static_cast<std::size_t>(i0) * N + i1] = val;
        }
    res.tail_bound = C * max_abs(f) * 2.0 * M_PI * std::pow(0.5 * L, -s) / s;
    return res;
}

QuadratureResult hilbert_pv_quadrature(const GridFunction& f, const QuadratureConfig& cfg) {
    const auto& spec = f.spec();
    if (spec.n != 1) throw std::invalid_argument("hilbert_pv_quadrature is 1-D only");
    if (cfg.rule && *cfg.rule != SingularCellRule::exclude)
        throw std::invalid_argument("hilbert_pv_quadrature only supports the exclude rule");
    const int N = spec.N;
    const double h = spec.h(), L = spec.L;
    std::vector<double> w(N / 2, 0.0);
    for (int m = 1; m < N / 2; ++m) {
        const double y = m * h;
        double K = 1.0 / y;
        if (!cfg.treat_as_compact) K += periodic_cot_remainder(y, L);
        w[m] = h * K / M_PI;
    }
    QuadratureResult res{GridFunction(spec), 0.0};
    for (int i = 0; i < N; ++i) {
        double acc = 0;
        for (int m = 1; m < N / 2; ++m) acc += w[m] * (f.at(i - m) - f.at(i + m));
        res.values[i] = acc;
    }
    if (cfg.treat_as_compact) res.tail_bound = l1_norm(f) / (M_PI * 0.5 * L);
    return res;
}

QuadratureResult riesz_potential_quadrature(const GridFunction& f, double s,
                                            const QuadratureConfig& cfg) {
    const auto& spec = f.spec();
    const int n = spec.n, N = spec.N;
    if (!(s > 0 && s < n)) throw std::invalid_argument("riesz_potential_quadrature needs s in (0,n)");
    const auto rule = cfg.rule.value_or(SingularCellRule::analytic_cell_average);
    if (rule == SingularCellRule::second_difference_regular)
        throw std::invalid_argument("riesz_potential_quadrature: second-difference rule is for the Laplacian");
    require_mean_negligible(f, "riesz_potential_quadrature");
    const double h = spec.h(), L = spec.L;
    const double C = riesz_potential_constant(n, s);
    const double sigma = n - s;
    QuadratureResult res{GridFunction(spec), 0.0};

    if (n == 1) {
        // Weights for offsets m in [-N/2, N/2).
        std::vector<double> w(N, 0.0);
        for (int m = -N / 2; m < N / 2; ++m) {
            const double y = m * h;
            double v = 0;
            if (m == 0) {
                if (rule == SingularCellRule::analytic_cell_average)
                    v = 2.0 * std::pow(0.5 * h, s) / s;
            } else {
                v = h * std::pow(std::abs(y), -sigma);
            }
            if (!cfg.treat_as_compact) v += h * periodic_power_remainder(sigma, y, L);
            w[m + N / 2] = C * v;
        }
        for (int i = 0; i < N; ++i) {
            double acc = 0;
            for (int m = -N / 2; m < N / 2; ++m) acc += w[m + N / 2] * f.at(i - m);
            res.values[i] = acc;
        }
        if (cfg.treat_as_compact) res.tail_bound = C * l1_norm(f) * std::pow(0.5 * L, -sigma);
        return res;
    }

    if (!cfg.treat_as_compact)
        throw std::invalid_argument("riesz_potential_quadrature: periodized kernel is 1-D only");
    std::vector<double> w(static_cast<std::size_t>(N) * N, 0.0);
    for (int a = -N / 2; a < N / 2; ++a)
        for (int b = -N / 2; b < N / 2; ++b) {
            double v = 0;
            if (a == 0 && b == 0) {
                if (rule == SingularCellRule::analytic_cell_average)
                    v = square_cell_power_integral(sigma, h);
            } else {
                v = h * h * std::pow(h * std::hypot(a, b), -sigma);
            }
            w[static_cast<std::size_t>(a + N / 2) * N + (b + N / 2)] = C * v;
        }
    for (int i0 = 0; i0 < N; ++i0)
        for (int i1 = 0; i1 < N; ++i1) {
            double acc = 0;
            for (int a = -N / 2; a < N / 2; ++a)
                for (int b = -N / 2; b < N / 2; ++b)
                    acc += w[static_cast<std::size_t>(a + N / 2) * N + (b + N / 2)] *
                           f.at(i0 - a, i1 - b);
            res.values[static_cast<std::size_t>(i0) * N + i1] = acc;
        }
    res.tail_bound = C * l1_norm(f) * std::pow(0.5 * L, -sigma);
    return res;
}

}  // namespace fracharm
