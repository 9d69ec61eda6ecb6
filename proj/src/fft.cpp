#include <fftw3.h>

#include <cstring>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <tuple>

#include "fracharm/grid.hpp"

namespace fracharm {

namespace {

// The FFTW planner is not thread safe; execution of an existing plan is.
class PlanCache {
public:
    ~PlanCache() {
        for (auto& [key, plan] : plans_) fftw_destroy_plan(plan);
    }

    fftw_plan get(int n, int N, int sign) {
        std::lock_guard<std::mutex> lock(mu_);
        auto key = std::make_tuple(n, N, sign);
        auto it = plans_.find(key);
        if (it != plans_.end()) return it->second;
        const std::size_t total = n == 1 ? N : static_cast<std::size_t>(N) * N;
        auto* in = fftw_alloc_complex(total);
        auto* out = fftw_alloc_complex(total);
        fftw_plan p = n == 1 ? fftw_plan_dft_1d(N, in, out, sign, FFTW_ESTIMATE)
                             : fftw_plan_dft_2d(N, N, in, out, sign, FFTW_ESTIMATE);
        fftw_free(in);
        fftw_free(out);
        plans_.emplace(key, p);
        return p;
    }

private:
    std::mutex mu_;
    std::map<std::tuple<int, int, int>, fftw_plan> plans_;
};

PlanCache& plan_cache() {
    static PlanCache cache;
    return cache;
}

struct Buffer {
    explicit Buffer(std::size_t n) : p(fftw_alloc_complex(n)) {}
    ~Buffer() { fftw_free(p); }
    Buffer(const Buffer&) = delete;
    Buffer& operator=(const Buffer&) = delete;
    fftw_complex* p;
};

void run(const GridSpec& spec, int sign, const std::complex<double>* src, std::complex<double>* dst) {
    const std::size_t total = spec.size();
    Buffer in(total), out(total);
    std::memcpy(in.p, src, total * sizeof(fftw_complex));
    fftw_execute_dft(plan_cache().get(spec.n, spec.N, sign), in.p, out.p);
    std::memcpy(static_cast<void*>(dst), out.p, total * sizeof(fftw_complex));
}

}  // namespace

Spectrum fft_forward(const GridFunction& f) {
    const auto& spec = f.spec();
    const std::size_t total = spec.size();
    std::vector<std::complex<double>> src(f.values().begin(), f.values().end());
    Spectrum S{spec, std::vector<std::complex<double>>(total)};
    run(spec, FFTW_FORWARD, src.data(), S.coeffs.data());
    const double scale = 1.0 / static_cast<double>(total);
    for (auto& c : S.coeffs) c *= scale;
    // Real input: remove the roundoff asymmetry between k and -k.
    for (std::size_t i = 0; i < total; ++i) {
        const auto p = partner_index(spec, i);
        if (p < i) continue;
        const auto sym = 0.5 * (S.coeffs[i] + std::conj(S.coeffs[p]));
        S.coeffs[i] = sym;
        S.coeffs[p] = std::conj(sym);
    }
    return S;
}

std::vector<std::complex<double>> fft_inverse_complex(const Spectrum& S) {
    S.spec.validate();
    if (S.coeffs.size() != S.spec.size()) throw std::invalid_argument("spectrum length mismatch");
    std::vector<std::complex<double>> out(S.coeffs.size());
    run(S.spec, FFTW_BACKWARD, S.coeffs.data(), out.data());
    return out;
}

GridFunction fft_inverse(const Spectrum& S, double tolerance) {
    double peak = 0;
    for (const auto& c : S.coeffs) peak = std::max(peak, std::abs(c));
    const double asym = S.hermitian_asymmetry();
    if (asym > tolerance * peak) {
        std::ostringstream os;
        os << "fft_inverse: spectrum is not Hermitian (max asymmetry " << asym << ", peak " << peak
           << ")";
        throw std::domain_error(os.str());
    }
    auto z = fft_inverse_complex(S);
    std::vector<double> re(z.size());
    for (std::size_t i = 0; i < z.size(); ++i) re[i] = z[i].real();
    return GridFunction(S.spec, std::move(re));
}

}  // namespace fracharm
