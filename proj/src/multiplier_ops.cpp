#include "fracharm/multiplier_ops.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fracharm/error.hpp"

namespace fracharm {

namespace {

double l2_norm(const GridFunction& f) {
    double s = 0;
    for (double v : f.values()) s += v * v;
    return std::sqrt(s * f.spec().cell_volume());
}

double norm_xi(const std::array<double, 2>& xi, int n) {
    return n == 1 ? std::abs(xi[0]) : std::hypot(xi[0], xi[1]);
}

}  // namespace

SymbolDescriptor SymbolDescriptor::radial(std::string name, std::function<double(double)> of_abs_xi,
                                          double at_zero) {
    SymbolDescriptor m;
    m.name = std::move(name);
    m.eval = [g = std::move(of_abs_xi)](const std::array<double, 2>& xi, int n) {
        return std::complex<double>(g(norm_xi(xi, n)), 0.0);
    };
    m.at_zero = at_zero;
    return m;
}

GridFunction apply_symbol(const GridFunction& f, const SymbolDescriptor& m) {
    const auto& spec = f.spec();
    Spectrum S = fft_forward(f);
    std::vector<std::complex<double>> mult(S.coeffs.size());
    for (std::size_t i = 0; i < mult.size(); ++i) {
        const auto k = frequency_vector(spec, i);
        if (k[0] == 0 && k[1] == 0) {
            mult[i] = m.at_zero;
        } else if (m.zero_nyquist && is_nyquist(spec, i)) {
            mult[i] = 0.0;
        } else {
            mult[i] = m.eval({k[0] / spec.L, k[1] / spec.L}, spec.n);
        }
        if (!std::isfinite(mult[i].real()) || !std::isfinite(mult[i].imag()))
            throw NumericalError("apply_symbol", "symbol '" + m.name + "' is not finite at k=(" +
                                                     std::to_string(k[0]) + "," +
                                                     std::to_string(k[1]) + ")");
    }
    double peak = 0;
    for (const auto& v : mult) peak = std::max(peak, std::abs(v));
    for (std::size_t i = 0; i < mult.size(); ++i) {
        const auto p = partner_index(spec, i);
        if (std::abs(mult[p] - std::conj(mult[i])) > 1e-12 * std::max(peak, 1e-300)) {
            const auto k = frequency_vector(spec, i);
            std::ostringstream os;
            os << "symbol '" << m.name << "' is not Hermitian-compatible at k=(" << k[0] << ","
               << k[1] << ")";
            throw std::domain_error(os.str());
        }
    }
    for (std::size_t i = 0; i < mult.size(); ++i) S.coeffs[i] *= mult[i];
    auto z = fft_inverse_complex(S);
    std::vector<double> re(z.size());
    double imag2 = 0;
    for (std::size_t i = 0; i < z.size(); ++i) {
        re[i] = z[i].real();
        imag2 += z[i].imag() * z[i].imag();
        if (!std::isfinite(re[i]))
            throw NumericalError("apply_symbol", "non-finite output for symbol '" + m.name + "'");
    }
    const double imag_norm = std::sqrt(imag2 * spec.cell_volume());
    // Large symbols amplify FFT roundoff, so the scale is the larger of input and output.
    GridFunction out(spec, re);
    const double scale = std::max(l2_norm(f), l2_norm(out));
    if (imag_norm > 1e-10 * scale) {
        std::ostringstream os;
        os << "imaginary residual " << imag_norm << " exceeds 1e-10 * " << scale
           << " for symbol '" << m.name << "'";
        throw NumericalError("apply_symbol", os.str());
    }
    return out;
}

SymbolDescriptor riesz_symbol(int axis) {
    SymbolDescriptor m;
    m.name = "riesz_" + std::to_string(axis);
    m.eval = [axis](const std::array<double, 2>& xi, int n) {
        return std::complex<double>(0.0, -xi[axis] / norm_xi(xi, n));
    };
    m.at_zero = 0.0;
    m.zero_nyquist = true;
    return m;
}

SymbolDescriptor frac_laplacian_symbol(double s) {
    return SymbolDescriptor::radial(
        "frac_laplacian", [s](double r) { return std::pow(2.0 * M_PI * r, s); }, 0.0);
}

SymbolDescriptor riesz_potential_symbol(double s) {
    return SymbolDescriptor::radial(
        "riesz_potential", [s](double r) { return std::pow(2.0 * M_PI * r, -s); }, 0.0);
}

GridFunction riesz_transform(const GridFunction& f, int axis) {
    if (axis < 0 || axis >= f.spec().n)
        throw std::invalid_argument("riesz_transform axis must be in [0, n)");
    return apply_symbol(f, riesz_symbol(axis));
}

GridFunction hilbert(const GridFunction& f) {
    if (f.spec().n != 1) throw std::invalid_argument("hilbert transform is 1-D only");
    return riesz_transform(f, 0);
}

GridFunction frac_laplacian(const GridFunction& f, double s) {
    if (!(s > 0)) throw std::invalid_argument("frac_laplacian order must be > 0");
    return apply_symbol(f, frac_laplacian_symbol(s));
}

GridFunction riesz_potential(const GridFunction& f, double s, double tol) {
    const int n = f.spec().n;
    if (!(s > 0 && s < n)) throw std::invalid_argument("riesz_potential order must lie in (0, n)");
    const double mean = f.mean();
    const double rms = l2_norm(f) / std::pow(f.spec().L, 0.5 * n);
    if (std::abs(mean) > tol * rms) {
        std::ostringstream os;
        os << "riesz_potential: input mean " << mean << " is not negligible (tol " << tol
           << " x rms " << rms << ")";
        throw std::domain_error(os.str());
    }
    return apply_symbol(f, riesz_potential_symbol(s));
}

GridFunction project_mean_zero(const GridFunction& f, double* removed) {
    const double m = f.mean();
    if (removed) *removed = m;
    GridFunction out = f;
    for (double& v : out.values()) v -= m;
    return out;
}

}  // namespace fracharm
