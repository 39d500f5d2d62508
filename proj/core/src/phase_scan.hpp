#pragma once

// Internal helper shared by the Fourier layer and the dual-group scan: walk all
// matrices of a MatrixSpace in code order while maintaining pairing phases
// against a fixed set of reference matrices. One step touches only the digits
// that roll over, so a full walk is amortized O(1) per matrix per reference.

#include <complex>
#include <numbers>
#include <span>
#include <vector>

#include "wafomlab/abelian.hpp"

namespace wafomlab::detail {

inline std::vector<std::complex<double>> phase_table(const GroupSpec& spec) {
    const std::uint64_t lcm = spec.character_order();
    std::vector<std::complex<double>> cis(lcm);
    for (std::uint64_t t = 0; t < lcm; ++t) {
        cis[t] = std::polar(1.0, 2.0 * std::numbers::pi * (double(t) / double(lcm)));
    }
    return cis;
}

template <typename Visit>
void phase_scan(const MatrixSpace& space, std::span<const DigitMatrix> refs, Visit&& visit) {
    const GroupSpec& spec = space.spec();
    const std::uint64_t lcm = spec.character_order();
    const std::size_t positions = std::size_t(space.rows()) * space.cols();
    const std::size_t k = spec.rank();
    const std::size_t digit_count = positions * k;
    const std::size_t nrefs = refs.size();

    std::vector<std::uint32_t> radix(digit_count);
    for (std::size_t pos = 0; pos < positions; ++pos) {
        for (std::size_t l = 0; l < k; ++l) radix[pos * k + l] = spec.moduli()[l];
    }

    // weights[r * digit_count + d]: phase increment when digit d of the running
    // matrix advances by one, against reference r. A digit rollover from m-1 to 0
    // is the same increment modulo lcm because m * weight == 0 there.
    std::vector<std::uint64_t> weights(nrefs * digit_count);
    for (std::size_t r = 0; r < nrefs; ++r) {
        const DigitMatrix& ref = refs[r];
        if (ref.spec() != spec || ref.rows() != space.rows() || ref.cols() != space.cols()) {
            throw spec_mismatch_error("phase scan reference does not match the matrix space");
        }
        auto codes = ref.codes();
        for (std::size_t pos = 0; pos < positions; ++pos) {
            const auto res = spec.residues(codes[pos]);
            for (std::size_t l = 0; l < k; ++l) {
                weights[r * digit_count + pos * k + l] = spec.digit_phase_weight(l, res[l]);
            }
        }
    }

    std::vector<std::uint32_t> digits(digit_count, 0);
    std::vector<std::uint64_t> phases(nrefs, 0);
    visit(std::uint64_t(0), std::span<const std::uint64_t>(phases));

    const std::uint64_t total = space.size();
    for (std::uint64_t code = 1; code < total; ++code) {
        std::size_t d = 0;
        for (;;) {
            for (std::size_t r = 0; r < nrefs; ++r) {
                phases[r] += weights[r * digit_count + d];
                if (phases[r] >= lcm) phases[r] -= lcm;
            }
            if (++digits[d] == radix[d]) {
                digits[d] = 0;
                ++d;
            } else {
                break;
            }
        }
        visit(code, std::span<const std::uint64_t>(phases));
    }
}

} // namespace wafomlab::detail
