#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <vector>

#include <gmpxx.h>

#include "wafomlab/netgen.hpp"
#include "wafomlab/weight.hpp"

namespace wafomlab {

/// Coefficients a_m of the dual weight enumerator W(1, y) = sum_m a_m y^m,
/// where a_m counts dual characters of Dick weight m. Exact integers; a_0 = 1,
/// and when untruncated the coefficients sum to |dual| = b^{sn} / |P|.
struct WeightEnumerator {
    std::uint64_t base = 2;
    std::uint32_t s = 0;
    std::uint32_t n = 0;
    std::uint64_t group_order = 1;      // |P|
    std::uint64_t full_degree = 0;      // n(n+1)s/2
    std::uint64_t truncation_degree = 0;
    std::vector<mpz_class> coeffs;      // a_0 .. a_truncation_degree

    bool truncated() const noexcept { return truncation_degree < full_degree; }
    mpz_class mass() const;
    bool operator==(const WeightEnumerator& other) const;
};

/// Dual weight enumerator computed from P itself:
///   a_m = [y^m] (1/|P|) sum_{B in P} prod_{i,j} (1 + eta(b_ij) y^j),
/// with eta(0) = b-1 and eta(nonzero) = -1, in exact integer arithmetic.
/// The per-point product is assembled column by column: column j contributes
/// (1 + (b-1)y^j)^z (1 - y^j)^(s-z) where z counts the zero entries, and the
/// degree-s coefficient tables for all z are precomputed once.
/// Coefficients above `truncation` (clamped to the full degree) are dropped.
WeightEnumerator weight_enumerator(const PointGroup& group,
                                   std::optional<std::uint64_t> truncation = std::nullopt,
                                   unsigned threads = 1);

/// Oracle path: the Dick-weight histogram of an explicit dual element list.
WeightEnumerator direct_enumerator(const MatrixList& dual_elements);

/// Minimum Dick weight over the nonzero dual characters; infinite() when the
/// dual is trivial (P is the whole group).
struct MinWeight {
    std::optional<std::uint64_t> value;
    bool infinite() const noexcept { return !value.has_value(); }
};

/// Computes the minimum via the truncated enumerator: the first truncation is
/// ceil(d^2/(2s) + 3d/2 + s) with d = ceil(log_b |P|), and is widened
/// geometrically in the (unexpected) case that no nonzero coefficient shows up.
MinWeight min_dick_weight(const PointGroup& group, unsigned threads = 1);

/// Per-column zero/nonzero profile counts of the dual: the key holds, for each
/// column, how many of the s entries are nonzero. Specializing column j to y^j
/// recovers the plain weight enumerator. Brute-force, oracle scale only.
struct CompleteWeightEnumerator {
    std::uint64_t base = 2;
    std::uint32_t s = 0;
    std::uint32_t n = 0;
    std::uint64_t group_order = 1;
    std::map<std::vector<std::uint32_t>, std::uint64_t> pattern_counts;

    WeightEnumerator specialize() const;
};

CompleteWeightEnumerator complete_weight_enumerator(const PointGroup& group,
                                                    std::uint64_t capacity = std::uint64_t(1)
                                                                             << 20);

/// Text export: header "# b s n M |P|", then one "m a_m" line per stored degree.
void write_enumerator(std::ostream& out, const WeightEnumerator& we);

/// Smallest d >= 0 with base^d >= value.
std::uint32_t ceil_log(std::uint64_t base, std::uint64_t value);

} // namespace wafomlab
