#include "fracharm/grid.hpp"

#include <cmath>
#include <random>
#include <sstream>
#include <stdexcept>

namespace fracharm {

namespace {

bool is_power_of_two(int v) { return v > 0 && (v & (v - 1)) == 0; }

// Periodic displacement folded into [-L/2, L/2).
double wrap(double d, double L) {
    double w = std::fmod(d + 0.5 * L, L);
    if (w < 0) w += L;
    return w - 0.5 * L;
}

}  // namespace

GridSpec GridSpec::make(int n, int N, double L) {
    GridSpec s{n, N, L};
    s.validate();
    return s;
}

void GridSpec::validate() const {
    if (n != 1 && n != 2) throw std::invalid_argument("grid dimension must be 1 or 2");
    if (!is_power_of_two(N) || N < 8)
        throw std::invalid_argument("grid size N must be a power of two >= 8, got " +
                                    std::to_string(N));
    if (!(L > 0) || !std::isfinite(L)) throw std::invalid_argument("grid period L must be > 0");
}

double GridSpec::cell_volume() const { return n == 1 ? h() : h() * h(); }

std::size_t GridSpec::size() const {
    return n == 1 ? static_cast<std::size_t>(N) : static_cast<std::size_t>(N) * N;
}

std::string describe(const GridSpec& spec) {
    std::ostringstream os;
    os << "n=" << spec.n << " N=" << spec.N << " L=" << spec.L;
    return os.str();
}

GridFunction::GridFunction(const GridSpec& spec) : spec_(spec), values_(spec.size(), 0.0) {
    spec.validate();
}

GridFunction::GridFunction(const GridSpec& spec, std::vector<double> values)
    : spec_(spec), values_(std::move(values)) {
    spec.validate();
    if (values_.size() != spec.size())
        throw std::invalid_argument("grid function length " + std::to_string(values_.size()) +
                                    " does not match grid size " + std::to_string(spec.size()));
    for (double v : values_)
        if (!std::isfinite(v)) throw std::invalid_argument("grid function has non-finite values");
}

double GridFunction::at(int i0, int i1) const {
    const int N = spec_.N;
    i0 = ((i0 % N) + N) % N;
    if (spec_.n == 1) return values_[i0];
    i1 = ((i1 % N) + N) % N;
    return values_[static_cast<std::size_t>(i0) * N + i1];
}

double GridFunction::mean() const {
    double s = 0;
    for (double v : values_) s += v;
    return s / static_cast<double>(values_.size());
}

GridFunction& GridFunction::operator+=(const GridFunction& o) {
    if (!(o.spec_ == spec_)) throw std::invalid_argument("grid mismatch in +=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] += o.values_[i];
    return *this;
}

GridFunction& GridFunction::operator-=(const GridFunction& o) {
    if (!(o.spec_ == spec_)) throw std::invalid_argument("grid mismatch in -=");
    for (std::size_t i = 0; i < values_.size(); ++i) values_[i] -= o.values_[i];
    return *this;
}

GridFunction& GridFunction::operator*=(double a) {
    for (double& v : values_) v *= a;
    return *this;
}

GridFunction operator+(GridFunction a, const GridFunction& b) { return a += b; }
GridFunction operator-(GridFunction a, const GridFunction& b) { return a -= b; }
GridFunction operator*(double a, GridFunction f) { return f *= a; }

GridFunction operator*(const GridFunction& a, const GridFunction& b) {
    if (!(a.spec() == b.spec())) throw std::invalid_argument("grid mismatch in product");
    GridFunction out(a.spec());
    for (std::size_t i = 0; i < a.size(); ++i) out[i] = a[i] * b[i];
    return out;
}

GridFunction constant(const GridSpec& spec, double c) {
    return GridFunction(spec, std::vector<double>(spec.size(), c));
}

GridFunction abs(const GridFunction& f) {
    GridFunction out(f.spec());
    for (std::size_t i = 0; i < f.size(); ++i) out[i] = std::abs(f[i]);
    return out;
}

double coordinate(const GridSpec& spec, std::size_t idx, int axis) {
    if (spec.n == 1) return static_cast<double>(idx) * spec.h();
    const std::size_t N = spec.N;
    const std::size_t i = axis == 0 ? idx / N : idx % N;
    return static_cast<double>(i) * spec.h();
}

std::array<int, 2> frequency_vector(const GridSpec& spec, std::size_t idx) {
    const int N = spec.N;
    if (spec.n == 1) return {frequency_of(static_cast<int>(idx), N), 0};
    return {frequency_of(static_cast<int>(idx / N), N), frequency_of(static_cast<int>(idx % N), N)};
}

bool is_nyquist(const GridSpec& spec, std::size_t idx) {
    auto k = frequency_vector(spec, idx);
    const int nyq = -spec.N / 2;
    return k[0] == nyq || (spec.n == 2 && k[1] == nyq);
}

std::size_t partner_index(const GridSpec& spec, std::size_t idx) {
    const std::size_t N = spec.N;
    if (spec.n == 1) return (N - idx) % N;
    const std::size_t i0 = idx / N, i1 = idx % N;
    return ((N - i0) % N) * N + (N - i1) % N;
}

double Spectrum::hermitian_asymmetry() const {
    double worst = 0;
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
        const auto p = partner_index(spec, i);
        worst = std::max(worst, std::abs(coeffs[p] - std::conj(coeffs[i])));
    }
    return worst;
}

std::vector<GridFunction> spectral_gradient(const GridFunction& f) {
    std::vector<GridFunction> out;
    for (int j = 0; j < f.spec().n; ++j) out.push_back(spectral_derivative(f, j));
    return out;
}

GridFunction spectral_derivative(const GridFunction& f, int axis) {
    const auto& spec = f.spec();
    if (axis < 0 || axis >= spec.n) throw std::invalid_argument("derivative axis out of range");
    Spectrum S = fft_forward(f);
    const double scale = 2.0 * M_PI / spec.L;
    for (std::size_t i = 0; i < S.coeffs.size(); ++i) {
        if (is_nyquist(spec, i)) {
            S.coeffs[i] = 0;
            continue;
        }
        const auto k = frequency_vector(spec, i);
        S.coeffs[i] *= std::complex<double>(0.0, scale * k[axis]);
    }
    return fft_inverse(S);
}

// ---- test functions ----

TestFunctionDescriptor TestFunctionDescriptor::gaussian(std::array<double, 2> c, double w) {
    TestFunctionDescriptor d;
    d.kind = FunctionKind::gaussian;
    d.center = c;
    d.width = w;
    return d;
}

TestFunctionDescriptor TestFunctionDescriptor::bump(std::array<double, 2> c, double r) {
    TestFunctionDescriptor d;
    d.kind = FunctionKind::smooth_bump;
    d.center = c;
    d.width = r;
    return d;
}

TestFunctionDescriptor TestFunctionDescriptor::sine(std::array<int, 2> k) {
    TestFunctionDescriptor d;
    d.kind = FunctionKind::sine;
    d.k = k;
    d.center = {0.0, 0.0};
    return d;
}

TestFunctionDescriptor TestFunctionDescriptor::random_bandlimited(std::uint64_t seed, int max_k,
                                                                  double envelope) {
    TestFunctionDescriptor d;
    d.kind = FunctionKind::random_bandlimited;
    d.seed = seed;
    d.max_k = max_k;
    d.envelope = envelope;
    return d;
}

TestFunctionDescriptor TestFunctionDescriptor::translated(std::array<double, 2> tau) const {
    auto d = *this;
    d.translate = {translate[0] + tau[0], translate[1] + tau[1]};
    return d;
}

TestFunctionDescriptor TestFunctionDescriptor::dilated(double lambda) const {
    if (!(lambda > 0)) throw std::invalid_argument("dilation factor must be > 0");
    auto d = *this;
    d.dilate *= lambda;
    return d;
}

TestFunctionDescriptor TestFunctionDescriptor::dilated_about(double lambda,
                                                             std::array<double, 2> c0) const {
    auto d = dilated(lambda);
    for (int a = 0; a < 2; ++a)
        d.translate[a] = c0[a] - center[a] + (center[a] + translate[a] - c0[a]) / lambda;
    return d;
}

TestFunctionDescriptor TestFunctionDescriptor::scaled(double a) const {
    auto d = *this;
    d.amplitude *= a;
    return d;
}

std::string describe(const TestFunctionDescriptor& d) {
    std::ostringstream os;
    os.precision(17);
    switch (d.kind) {
        case FunctionKind::gaussian:
            os << "gaussian(c=" << d.center[0] << "," << d.center[1] << " w=" << d.width << ")";
            break;
        case FunctionKind::smooth_bump:
            os << "bump(c=" << d.center[0] << "," << d.center[1] << " r=" << d.width << ")";
            break;
        case FunctionKind::sine:
            os << "sine(k=" << d.k[0] << "," << d.k[1] << ")";
            break;
        case FunctionKind::random_bandlimited:
            os << "random_bandlimited(seed=" << d.seed << " K=" << d.max_k << " env=" << d.envelope
               << ")";
            break;
    }
    os << " tau=" << d.translate[0] << "," << d.translate[1] << " lambda=" << d.dilate
       << " a=" << d.amplitude;
    return os.str();
}

double unit_uniform(std::uint64_t bits) { return static_cast<double>(bits >> 11) * 0x1.0p-53; }

namespace {

struct Mode {
    std::array<int, 2> k;
    double a, b;
};

std::vector<Mode> random_modes(const TestFunctionDescriptor& d, int n) {
    if (d.max_k < 1) throw std::invalid_argument("random_bandlimited needs max_k >= 1");
    std::mt19937_64 eng(d.seed);
    std::vector<Mode> modes;
    const int K = d.max_k;
    // One representative per +-k pair: first nonzero component positive.
    for (int k0 = 0; k0 <= K; ++k0) {
        for (int k1 = (n == 2 ? -K : 0); k1 <= (n == 2 ? K : 0); ++k1) {
            if (k0 == 0 && k1 <= 0) continue;
            if (n == 1 && k1 != 0) continue;
            double a = 2.0 * unit_uniform(eng()) - 1.0;
            double b = 2.0 * unit_uniform(eng()) - 1.0;
            modes.push_back({{k0, k1}, a, b});
        }
    }
    const double norm = 1.0 / std::sqrt(static_cast<double>(modes.size()));
    for (auto& m : modes) {
        m.a *= norm;
        m.b *= norm;
    }
    return modes;
}

bool near_integer(double v) { return std::abs(v - std::round(v)) < 1e-9; }

}  // namespace

GridFunction make_function(const TestFunctionDescriptor& d, const GridSpec& spec) {
    spec.validate();
    const int n = spec.n;
    const double L = spec.L;
    const double lam = d.dilate;
    if (!(lam > 0)) throw std::invalid_argument("dilation factor must be > 0");
    if (!std::isfinite(d.amplitude)) throw std::invalid_argument("amplitude must be finite");

    // Effective support radius in physical units after dilation.
    double reach = 0;
    switch (d.kind) {
        case FunctionKind::gaussian:
            if (!(d.width > 0)) throw std::invalid_argument("gaussian width must be > 0");
            reach = 6.0 * d.width / lam;  // exp(-18) beyond
            break;
        case FunctionKind::smooth_bump:
            if (!(d.width > 0)) throw std::invalid_argument("bump radius must be > 0");
            reach = d.width / lam;
            break;
        case FunctionKind::random_bandlimited:
            if (d.envelope > 0) reach = 6.0 * d.envelope / lam;
            break;
        case FunctionKind::sine:
            break;
    }
    if (reach >= 0.5 * L) {
        std::ostringstream os;
        os << "support of " << describe(d) << " (radius " << reach
           << ") exceeds half the period L=" << L;
        throw std::invalid_argument(os.str());
    }

    std::vector<Mode> modes;
    if (d.kind == FunctionKind::sine) {
        modes.push_back({d.k, 0.0, 1.0});
        if (n == 1 && d.k[1] != 0) throw std::invalid_argument("sine k[1] must be 0 in 1-D");
    } else if (d.kind == FunctionKind::random_bandlimited) {
        modes = random_modes(d, n);
    }
    const bool periodic_kind = d.kind == FunctionKind::sine ||
                               (d.kind == FunctionKind::random_bandlimited && d.envelope <= 0);
    if (periodic_kind) {
        for (const auto& m : modes)
            if (!near_integer(lam * m.k[0]) || !near_integer(lam * m.k[1]))
                throw std::invalid_argument("dilation " + std::to_string(lam) +
                                            " breaks periodicity of " + describe(d));
    }

    GridFunction f(spec);
    const std::size_t total = spec.size();
    for (std::size_t idx = 0; idx < total; ++idx) {
        std::array<double, 2> y{0.0, 0.0};  // dilated displacement from center
        double r2 = 0;
        for (int a = 0; a < n; ++a) {
            const double x = coordinate(spec, idx, a);
            const double disp = x - d.center[a] - d.translate[a];
            y[a] = lam * (periodic_kind ? disp : wrap(disp, L));
            r2 += y[a] * y[a];
        }
        double v = 0;
        switch (d.kind) {
            case FunctionKind::gaussian:
                v = std::exp(-r2 / (2.0 * d.width * d.width));
                break;
            case FunctionKind::smooth_bump: {
                const double rho2 = r2 / (d.width * d.width);
                v = rho2 < 1.0 ? std::exp(1.0 - 1.0 / (1.0 - rho2)) : 0.0;
                break;
            }
            case FunctionKind::sine:
            case FunctionKind::random_bandlimited: {
                // Enveloped carriers scale with the envelope (K cycles per 8 widths) so
                // that dilation acts on the whole packet.
                const bool env = d.kind == FunctionKind::random_bandlimited && d.envelope > 0;
                for (const auto& m : modes) {
                    double phase = 0;
                    for (int a = 0; a < n; ++a) phase += m.k[a] * (env ? y[a] : d.center[a] + y[a]);
                    phase *= 2.0 * M_PI / (env ? 8.0 * d.envelope : L);
                    v += m.a * std::cos(phase) + m.b * std::sin(phase);
                }
                if (d.kind == FunctionKind::random_bandlimited && d.envelope > 0)
                    v *= std::exp(-r2 / (2.0 * d.envelope * d.envelope));
                break;
            }
        }
        f[idx] = d.amplitude * v;
    }
    return f;
}

}  // namespace fracharm
