#include "wafomlab/weight.hpp"

#include <cmath>

namespace wafomlab {

std::uint64_t dick_weight(const DigitMatrix& a) {
    std::uint64_t mu = 0;
    const std::uint32_t n = a.cols();
    auto codes = a.codes();
    for (std::size_t t = 0; t < codes.size(); ++t) {
        if (codes[t] != 0) mu += t % n + 1;
    }
    return mu;
}

std::uint64_t max_dick_weight(std::uint32_t s, std::uint32_t n) {
    return std::uint64_t(n) * (n + 1) / 2 * s;
}

mpz_class SphereSeries::volume(std::uint32_t M) const {
    mpz_class total = 0;
    const std::uint32_t top = std::min(M, m_max());
    for (std::uint32_t m = 0; m <= top; ++m) total += counts[m];
    return total;
}

namespace {

// Multiplies the dense coefficient vector in place by (1 + (b-1) x^k)^s,
// truncated at the vector length.
void multiply_binomial_power(std::vector<mpz_class>& coeffs, std::uint64_t b_minus_1,
                             std::uint32_t k, std::uint32_t s) {
    const std::size_t len = coeffs.size();
    for (std::uint32_t rep = 0; rep < s; ++rep) {
        if (k >= len) return;
        for (std::size_t m = len; m-- > k;) {
            mpz_addmul_ui(coeffs[m].get_mpz_t(), coeffs[m - k].get_mpz_t(), b_minus_1);
        }
    }
}

SphereSeries build_series(std::uint64_t b, std::uint32_t s, std::optional<std::uint32_t> n,
                          std::uint32_t m_max) {
    if (b < 2) throw error("base must be at least 2");
    SphereSeries out;
    out.base = b;
    out.s = s;
    out.n = n;
    out.counts.assign(std::size_t(m_max) + 1, 0);
    out.counts[0] = 1;
    const std::uint32_t k_top = n ? *n : m_max;
    for (std::uint32_t k = 1; k <= k_top; ++k) {
        multiply_binomial_power(out.counts, b - 1, k, s);
    }
    return out;
}

} // namespace

SphereSeries sphere_sizes(std::uint64_t b, std::uint32_t s, std::uint32_t n,
                          std::uint32_t m_max) {
    return build_series(b, s, n, m_max);
}

SphereSeries sphere_sizes_stable(std::uint64_t b, std::uint32_t s, std::uint32_t m_max) {
    return build_series(b, s, std::nullopt, m_max);
}

mpz_class volume(std::uint64_t b, std::uint32_t s, std::uint32_t n, std::uint32_t M) {
    const std::uint64_t top = std::min<std::uint64_t>(M, max_dick_weight(s, n));
    return sphere_sizes(b, s, n, std::uint32_t(top)).volume(M);
}

mpz_class volume_stable(std::uint64_t b, std::uint32_t s, std::uint32_t M) {
    return sphere_sizes_stable(b, s, M).volume(M);
}

double volume_bound(std::uint64_t b, std::uint32_t s, double M) {
    if (M < 0) throw precondition_error("volume bound needs M >= 0");
    return std::exp(2.0 * std::sqrt(double(b - 1) * double(s) * M));
}

} // namespace wafomlab
