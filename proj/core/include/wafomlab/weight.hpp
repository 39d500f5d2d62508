#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "wafomlab/abelian.hpp"

namespace wafomlab {

/// Dick weight of a matrix: sum over nonzero entries of their (1-based) column
/// index. Zero exactly for the zero matrix; at most n(n+1)s/2.
std::uint64_t dick_weight(const DigitMatrix& a);

/// Largest possible Dick weight on s x n matrices, n(n+1)s/2.
std::uint64_t max_dick_weight(std::uint32_t s, std::uint32_t n);

/// Exact counts S(m) of matrices at Dick weight m, as coefficients of the
/// generating polynomial prod_k (1 + (b-1) x^k)^s. `n` is empty for the
/// stabilized series, whose product runs over all k (truncated at m_max).
struct SphereSeries {
    std::uint64_t base = 2;
    std::uint32_t s = 0;
    std::optional<std::uint32_t> n;
    std::vector<mpz_class> counts; // S(0..m_max)

    std::uint32_t m_max() const noexcept { return std::uint32_t(counts.size()) - 1; }
    const mpz_class& at(std::uint32_t m) const { return counts.at(m); }

    /// Ball size: sum of S(0..M), clamped to the stored range.
    mpz_class volume(std::uint32_t M) const;
};

/// Sphere sizes of G^{s x n} up to weight m_max (exact integers).
SphereSeries sphere_sizes(std::uint64_t b, std::uint32_t s, std::uint32_t n, std::uint32_t m_max);

/// Stabilized sphere sizes S_s(m) = S_{s,m}(m); coefficients of
/// prod_{k=1..m_max} (1 + (b-1) x^k)^s up to degree m_max.
SphereSeries sphere_sizes_stable(std::uint64_t b, std::uint32_t s, std::uint32_t m_max);

/// Ball cardinality vol_{s,n}(M) = #{A : dick_weight(A) <= M}, exact.
mpz_class volume(std::uint64_t b, std::uint32_t s, std::uint32_t n, std::uint32_t M);

/// Stabilized ball cardinality vol_s(M) = vol_{s,M}(M), exact.
mpz_class volume_stable(std::uint64_t b, std::uint32_t s, std::uint32_t M);

/// Exponential upper bound exp(2 sqrt((b-1) s M)) on vol_s(M) and S_s(M).
double volume_bound(std::uint64_t b, std::uint32_t s, double M);

} // namespace wafomlab
