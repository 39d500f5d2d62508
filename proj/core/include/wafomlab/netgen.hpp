#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "wafomlab/abelian.hpp"

namespace wafomlab {

/// Default cap on explicitly enumerated subgroup sizes and brute-force scans.
inline constexpr std::uint64_t kDefaultEnumerationCap = std::uint64_t(1) << 24;

/// d generator matrices B_1..B_d, all of shape s x n over the same group.
struct GeneratorSet {
    GroupSpec group;
    std::uint32_t s = 0;
    std::uint32_t n = 0;
    std::vector<DigitMatrix> generators;

    std::uint32_t d() const noexcept { return std::uint32_t(generators.size()); }
    void validate() const;
};

/// Classic digital-net input: s matrices C_1..C_s, each n x d over Z_b (cyclic
/// base only). matrices[i] is row-major n x d.
struct GeneratingMatrices {
    std::uint64_t base = 2;
    std::uint32_t s = 0;
    std::uint32_t n = 0;
    std::uint32_t d = 0;
    std::vector<std::vector<std::uint32_t>> matrices;

    void validate() const;
};

/// Rewrites generating matrices as the equivalent generator set: the j-th row of
/// X_i is the transpose of the i-th column of C_j.
GeneratorSet to_generator_set(const GeneratingMatrices& gm);

enum class PointGroupProvenance { span, digital_net, whole_group, trivial, explicit_elements };

/// An explicitly enumerated subgroup P of G^{s x n}: closed under entrywise
/// addition and negation, contains the zero matrix (always stored first).
/// Immutable after construction.
class PointGroup {
public:
    const GroupSpec& spec() const noexcept { return elements_.spec(); }
    std::uint32_t rows() const noexcept { return elements_.rows(); } // s
    std::uint32_t cols() const noexcept { return elements_.cols(); } // n
    std::uint64_t order() const noexcept { return elements_.size(); }

    const MatrixList& elements() const noexcept { return elements_; }
    const std::vector<DigitMatrix>& generators() const noexcept { return generators_; }
    PointGroupProvenance provenance() const noexcept { return provenance_; }

    /// Digital nets only: whether the derived X_1..X_d were a free basis
    /// (equivalently |P| == b^d).
    std::optional<bool> free_basis() const noexcept { return free_basis_; }

    bool is_whole_group() const;

    friend PointGroup span(const GeneratorSet&, std::uint64_t);
    friend PointGroup digital_net(const GeneratingMatrices&, std::uint64_t);
    friend PointGroup whole_group(GroupSpec, std::uint32_t, std::uint32_t, std::uint64_t);
    friend PointGroup trivial_group(GroupSpec, std::uint32_t, std::uint32_t);
    friend PointGroup point_group_from_elements(const MatrixList&, std::uint64_t);

private:
    explicit PointGroup(MatrixList elements) : elements_(std::move(elements)) {}

    static PointGroup make(GroupSpec spec, std::uint32_t s, std::uint32_t n,
                           std::vector<std::uint32_t> flat, std::vector<DigitMatrix> gens,
                           PointGroupProvenance prov, std::optional<bool> free_basis);

    MatrixList elements_;
    std::vector<DigitMatrix> generators_;
    PointGroupProvenance provenance_ = PointGroupProvenance::span;
    std::optional<bool> free_basis_;
};

/// Subgroup generated by the matrices of `gens` under entrywise addition.
/// Fails with capacity_error when the subgroup would exceed `capacity` elements.
PointGroup span(const GeneratorSet& gens, std::uint64_t capacity = kDefaultEnumerationCap);

/// Enumerates the digital net of `gm`: x_k = sum_i kappa_{i-1} X_i over all
/// b-adic digit vectors (kappa) of k in [0, b^d), deduplicated.
PointGroup digital_net(const GeneratingMatrices& gm,
                       std::uint64_t capacity = kDefaultEnumerationCap);

PointGroup whole_group(GroupSpec spec, std::uint32_t s, std::uint32_t n,
                       std::uint64_t capacity = kDefaultEnumerationCap);
PointGroup trivial_group(GroupSpec spec, std::uint32_t s, std::uint32_t n);

/// Rebuilds a PointGroup from an explicit element list (which must be a
/// subgroup); extracts a small generating set greedily.
PointGroup point_group_from_elements(const MatrixList& elements,
                                     std::uint64_t capacity = kDefaultEnumerationCap);

/// Brute-force dual: all characters A of G^{s x n} with matrix_pair(A, B) = 1
/// for every generator B of P. Requires |G^{s x n}| <= capacity.
MatrixList dual(const PointGroup& group, std::uint64_t capacity = kDefaultEnumerationCap);

/// Net file round-trip. Format:
///   wafomnet v1 <m_1,...,m_k> <s> <n> <d>
/// followed by d blocks of s lines, each with n entries; an entry is a single
/// code for cyclic groups or comma-joined residues for product groups.
GeneratorSet parse_net_file(std::istream& in);
GeneratorSet parse_net_file(const std::string& path);
void write_net_file(std::ostream& out, const GeneratorSet& gens);
std::string net_file_string(const GeneratorSet& gens);

} // namespace wafomlab
