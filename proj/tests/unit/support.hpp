#pragma once

#include <cmath>

#include "fracharm/grid.hpp"
#include "fracharm/norms.hpp"

namespace fracharm::test {

inline double rel_l2(const GridFunction& got, const GridFunction& want) {
    return lp_norm(got - want, 2.0) / lp_norm(want, 2.0);
}

inline double rel_linf(const GridFunction& got, const GridFunction& want) {
    return lp_norm(got - want, kInf) / lp_norm(want, kInf);
}

inline GridFunction sine(const GridSpec& spec, int k = 1, int axis = 0) {
    std::array<int, 2> kv{0, 0};
    kv[axis] = k;
    return make_function(TestFunctionDescriptor::sine(kv), spec);
}

inline GridFunction cosine(const GridSpec& spec, int k = 1) {
    GridFunction g(spec);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::cos(2 * M_PI * k * coordinate(spec, i, 0) / spec.L);
    return g;
}

inline GridFunction bandlimited(const GridSpec& spec, std::uint64_t seed, int K = 4) {
    return make_function(TestFunctionDescriptor::random_bandlimited(seed, K), spec);
}

}  // namespace fracharm::test
