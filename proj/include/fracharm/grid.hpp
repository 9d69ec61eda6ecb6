#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace fracharm {

/// Uniform periodic grid: n axes, N points per axis, period L.
struct GridSpec {
    int n = 1;
    int N = 64;
    double L = 1.0;

    /// Throws std::invalid_argument unless n in {1,2}, N a power of two >= 8, L > 0.
    static GridSpec make(int n, int N, double L);

    double h() const { return L / N; }
    double cell_volume() const;
    std::size_t size() const;
    void validate() const;

    bool operator==(const GridSpec&) const = default;
};

std::string describe(const GridSpec& spec);

class GridFunction {
public:
    GridFunction() = default;
    explicit GridFunction(const GridSpec& spec);  // zero-filled
    GridFunction(const GridSpec& spec, std::vector<double> values);

    const GridSpec& spec() const { return spec_; }
    const std::vector<double>& values() const { return values_; }
    std::vector<double>& values() { return values_; }
    std::size_t size() const { return values_.size(); }

    double operator[](std::size_t i) const { return values_[i]; }
    double& operator[](std::size_t i) { return values_[i]; }

    // 2-D storage is row-major with the first coordinate as the slow index.
    double at(int i0, int i1 = 0) const;

    double mean() const;
    GridFunction& operator+=(const GridFunction& o);
    GridFunction& operator-=(const GridFunction& o);
    GridFunction& operator*=(double a);

private:
    GridSpec spec_{};
    std::vector<double> values_;
};

GridFunction operator+(GridFunction a, const GridFunction& b);
GridFunction operator-(GridFunction a, const GridFunction& b);
GridFunction operator*(double a, GridFunction f);
/// Pointwise product.
GridFunction operator*(const GridFunction& a, const GridFunction& b);
GridFunction constant(const GridSpec& spec, double c);
GridFunction abs(const GridFunction& f);

/// Grid-point coordinate of flat index idx along axis.
double coordinate(const GridSpec& spec, std::size_t idx, int axis);

/// Integer frequency for storage index i in [0, N): i for i < N/2, else i - N.
inline int frequency_of(int i, int N) { return i < N / 2 ? i : i - N; }

/// Integer frequency vector for a flat spectrum index.
std::array<int, 2> frequency_vector(const GridSpec& spec, std::size_t idx);

/// True if some component equals -N/2.
bool is_nyquist(const GridSpec& spec, std::size_t idx);

/// Flat index of the frequency -k (the Hermitian partner of idx).
std::size_t partner_index(const GridSpec& spec, std::size_t idx);

struct Spectrum {
    GridSpec spec;
    std::vector<std::complex<double>> coeffs;

    /// max |c(-k) - conj(c(k))| over all k
    double hermitian_asymmetry() const;
};

/// coeffs(k) = N^-n * sum_j f(x_j) exp(-2 pi i k.j / N)
Spectrum fft_forward(const GridFunction& f);

/// Throws std::domain_error (reporting the max asymmetry) when the spectrum is not
/// Hermitian to within tolerance * max|coeff|.
GridFunction fft_inverse(const Spectrum& S, double tolerance = 1e-13);

/// Inverse transform without the symmetry check; returns the full complex field.
std::vector<std::complex<double>> fft_inverse_complex(const Spectrum& S);

/// Component j is the inverse transform of (2 pi i k_j / L) coeffs; Nyquist dropped.
std::vector<GridFunction> spectral_gradient(const GridFunction& f);

/// Spectral partial derivative along one axis, Nyquist dropped.
GridFunction spectral_derivative(const GridFunction& f, int axis);

enum class FunctionKind { gaussian, smooth_bump, sine, random_bandlimited };

/// Test-function recipe. The sampled function is
///   x -> amplitude * g(center + dilate * (x - center - translate))
/// where g is the base profile of the given kind.
struct TestFunctionDescriptor {
    FunctionKind kind = FunctionKind::gaussian;
    std::array<double, 2> center{0.5, 0.5};
    double width = 0.0625;  // gaussian std-dev, or bump radius
    std::array<int, 2> k{1, 0};
    std::uint64_t seed = 0;
    int max_k = 4;
    double envelope = 0.0;  // random-bandlimited: Gaussian envelope width, 0 = none;
                            // with an envelope the carrier period is 8 * envelope / k

    std::array<double, 2> translate{0.0, 0.0};
    double dilate = 1.0;
    double amplitude = 1.0;

    static TestFunctionDescriptor gaussian(std::array<double, 2> center, double width);
    static TestFunctionDescriptor bump(std::array<double, 2> center, double radius);
    static TestFunctionDescriptor sine(std::array<int, 2> k);
    static TestFunctionDescriptor random_bandlimited(std::uint64_t seed, int max_k,
                                                     double envelope = 0.0);

    TestFunctionDescriptor translated(std::array<double, 2> tau) const;
    TestFunctionDescriptor dilated(double lambda) const;
    /// x -> f(c0 + lambda (x - c0)), i.e. dilation about a common point.
    TestFunctionDescriptor dilated_about(double lambda, std::array<double, 2> c0) const;
    TestFunctionDescriptor scaled(double a) const;
};

std::string describe(const TestFunctionDescriptor& d);

/// Throws std::invalid_argument if the (dilated) support does not fit in one period.
GridFunction make_function(const TestFunctionDescriptor& desc, const GridSpec& spec);

/// Uniform double in [0,1) from a 64-bit engine draw, platform independent.
double unit_uniform(std::uint64_t bits);

}  // namespace fracharm
