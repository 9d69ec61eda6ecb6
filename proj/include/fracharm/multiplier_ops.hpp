#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>

#include "fracharm/grid.hpp"

namespace fracharm {

/// Fourier multiplier m(xi), xi = k/L physical frequency. The value at xi = 0 is
/// declared separately and never computed from `eval`.
struct SymbolDescriptor {
    std::string name;
    std::function<std::complex<double>(const std::array<double, 2>& xi, int n)> eval;
    std::complex<double> at_zero = 0.0;
    /// Odd symbols are not Hermitian-compatible at k = -N/2; drop that coefficient.
    bool zero_nyquist = false;

    static SymbolDescriptor radial(std::string name, std::function<double(double)> of_abs_xi,
                                   double at_zero);
};

/// Returns the real part of ifft(m * fft(f)). Throws std::domain_error if m is not
/// Hermitian-compatible on the grid, NumericalError if the imaginary residual
/// exceeds 1e-10 * ||f||_2 or m is non-finite.
GridFunction apply_symbol(const GridFunction& f, const SymbolDescriptor& m);

SymbolDescriptor riesz_symbol(int axis);
SymbolDescriptor frac_laplacian_symbol(double s);
SymbolDescriptor riesz_potential_symbol(double s);

/// axis is zero-based. In 1-D this is the Hilbert transform.
GridFunction riesz_transform(const GridFunction& f, int axis);
GridFunction hilbert(const GridFunction& f);
GridFunction frac_laplacian(const GridFunction& f, double s);

/// Rejects |mean f| > tol * rms(f).
GridFunction riesz_potential(const GridFunction& f, double s, double tol = 1e-8);

/// f - mean(f); the removed mean is written to *removed when non-null.
GridFunction project_mean_zero(const GridFunction& f, double* removed = nullptr);

}  // namespace fracharm
