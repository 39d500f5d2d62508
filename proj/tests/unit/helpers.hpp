#pragma once

#include <complex>
#include <random>
#include <vector>

#include "wafomlab/netgen.hpp"
#include "wafomlab/search.hpp"

namespace testutil {

using namespace wafomlab;

inline GroupSpec cyclic(std::uint32_t b) { return GroupSpec({b}); }

inline DigitMatrix matrix_from(const GroupSpec& spec, std::uint32_t s, std::uint32_t n,
                               std::initializer_list<std::uint32_t> codes) {
    return DigitMatrix(spec, s, n, std::vector<std::uint32_t>(codes));
}

/// Random subgroup drawn as the span of d uniform generators.
inline PointGroup random_subgroup(std::mt19937_64& rng, const GroupSpec& spec, std::uint32_t s,
                                  std::uint32_t n, std::uint32_t d) {
    return span(random_generator_set(rng, spec, s, n, d));
}

/// Sorted element codes, for order-independent set comparison.
inline std::vector<std::vector<std::uint32_t>> sorted_elements(const MatrixList& list) {
    std::vector<std::vector<std::uint32_t>> out;
    out.reserve(list.size());
    for (std::size_t i = 0; i < list.size(); ++i) {
        auto v = list.view(i);
        out.emplace_back(v.begin(), v.end());
    }
    std::sort(out.begin(), out.end());
    return out;
}

inline bool same_element_set(const MatrixList& a, const MatrixList& b) {
    return sorted_elements(a) == sorted_elements(b);
}

inline double cdist(std::complex<double> a, std::complex<double> b) { return std::abs(a - b); }

/// Specs exercised by the small randomized sweeps.
inline std::vector<GroupSpec> sweep_specs() {
    return {GroupSpec({2}), GroupSpec({3}), GroupSpec({4}), GroupSpec({5}),
            GroupSpec({6}), GroupSpec({2, 2}), GroupSpec({2, 3})};
}

} // namespace testutil
