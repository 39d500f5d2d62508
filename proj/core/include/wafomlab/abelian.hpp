#pragma once

#include <complex>
#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

#include "wafomlab/errors.hpp"

namespace wafomlab {

class PointGroup; // netgen.hpp

/// A finite abelian group given as a product of cyclic factors Z_{m_1} x ... x Z_{m_k}.
///
/// Elements are stored as packed codes in [0, order): the mixed-radix number whose
/// digits are the residues, least significant factor first. A cyclic group (k = 1)
/// has code == residue.
class GroupSpec {
public:
    GroupSpec() : GroupSpec(std::vector<std::uint32_t>{2}) {} // Z_2
    explicit GroupSpec(std::vector<std::uint32_t> moduli);

    const std::vector<std::uint32_t>& moduli() const noexcept { return moduli_; }
    std::size_t rank() const noexcept { return moduli_.size(); }
    std::uint64_t order() const noexcept { return order_; }
    std::uint64_t smallest_prime_factor() const noexcept { return smallest_prime_; }
    bool is_cyclic() const noexcept { return moduli_.size() == 1; }

    /// Least common multiple of the factor orders; the pairing takes values in
    /// the lcm-th roots of unity.
    std::uint64_t character_order() const noexcept { return lcm_; }

    std::uint32_t add(std::uint32_t a, std::uint32_t b) const noexcept;
    std::uint32_t negate(std::uint32_t a) const noexcept;
    /// Integer multiple k*a in the group.
    std::uint32_t scale(std::uint64_t k, std::uint32_t a) const noexcept;

    std::vector<std::uint32_t> residues(std::uint32_t code) const;
    std::uint32_t code_of(std::span<const std::uint32_t> residues) const;

    /// Phase numerator t of the pairing: pair(h, g) = exp(2*pi*i * t / character_order()).
    std::uint64_t pairing_phase(std::uint32_t h, std::uint32_t g) const noexcept;

    /// Weight of one residue digit in the pairing phase: residue * (lcm / m_factor) mod lcm.
    std::uint64_t digit_phase_weight(std::size_t factor, std::uint32_t residue) const noexcept;

    bool operator==(const GroupSpec& other) const noexcept { return moduli_ == other.moduli_; }
    bool operator!=(const GroupSpec& other) const noexcept { return !(*this == other); }

    std::string to_string() const; // "2" or "2,3"

private:
    std::vector<std::uint32_t> moduli_;
    std::vector<std::uint64_t> places_;   // mixed-radix place values
    std::uint64_t order_ = 1;             // b
    std::uint64_t lcm_ = 1;
    std::uint64_t smallest_prime_ = 2;    // p_b
};

/// One group element, kept in residue form. Carries its spec so that mixing
/// elements of different groups is detected.
struct GroupElement {
    GroupSpec spec;
    std::vector<std::uint32_t> residues;

    bool is_zero() const noexcept;
    std::uint32_t code() const { return spec.code_of(residues); }
};

/// An s x n matrix of group elements, the ambient object for points, generators
/// and characters alike. Entries are packed codes, row-major.
class DigitMatrix {
public:
    DigitMatrix(GroupSpec spec, std::uint32_t rows, std::uint32_t cols);
    DigitMatrix(GroupSpec spec, std::uint32_t rows, std::uint32_t cols,
                std::vector<std::uint32_t> codes);

    const GroupSpec& spec() const noexcept { return spec_; }
    std::uint32_t rows() const noexcept { return rows_; }
    std::uint32_t cols() const noexcept { return cols_; }

    std::uint32_t entry_code(std::uint32_t i, std::uint32_t j) const {
        return codes_[std::size_t(i) * cols_ + j];
    }
    void set_entry_code(std::uint32_t i, std::uint32_t j, std::uint32_t code);
    GroupElement entry(std::uint32_t i, std::uint32_t j) const;
    void set_entry(std::uint32_t i, std::uint32_t j, const GroupElement& e);

    std::span<const std::uint32_t> codes() const noexcept { return codes_; }

    bool is_zero() const noexcept;
    DigitMatrix operator+(const DigitMatrix& other) const;
    DigitMatrix negated() const;
    DigitMatrix scaled(std::uint64_t k) const;

    bool operator==(const DigitMatrix& other) const noexcept;
    bool operator!=(const DigitMatrix& other) const noexcept { return !(*this == other); }

private:
    GroupSpec spec_;
    std::uint32_t rows_, cols_;
    std::vector<std::uint32_t> codes_;
};

/// A flat, shape-homogeneous list of matrices. Used for duals and point group
/// element storage, where one DigitMatrix object per element would be wasteful.
class MatrixList {
public:
    MatrixList(GroupSpec spec, std::uint32_t rows, std::uint32_t cols);

    const GroupSpec& spec() const noexcept { return spec_; }
    std::uint32_t rows() const noexcept { return rows_; }
    std::uint32_t cols() const noexcept { return cols_; }
    std::size_t size() const noexcept { return count_; }
    std::size_t entries_per_matrix() const noexcept { return std::size_t(rows_) * cols_; }

    std::span<const std::uint32_t> view(std::size_t idx) const noexcept;
    DigitMatrix at(std::size_t idx) const;

    void push_back(std::span<const std::uint32_t> codes);
    void push_back(const DigitMatrix& m);
    void reserve(std::size_t count);

    std::span<const std::uint32_t> flat() const noexcept { return flat_; }

    /// Adopts a prebuilt flat code buffer (size must be a multiple of rows*cols).
    static MatrixList from_flat(GroupSpec spec, std::uint32_t rows, std::uint32_t cols,
                                std::vector<std::uint32_t> flat);

private:
    GroupSpec spec_;
    std::uint32_t rows_, cols_;
    std::size_t count_ = 0;
    std::vector<std::uint32_t> flat_;
};

/// The full matrix group G^{s x n}, enumerable by code. Construction fails when
/// order()^(s*n) exceeds the given capacity; brute-force transforms live here.
class MatrixSpace {
public:
    MatrixSpace(GroupSpec spec, std::uint32_t rows, std::uint32_t cols,
                std::uint64_t capacity);

    const GroupSpec& spec() const noexcept { return spec_; }
    std::uint32_t rows() const noexcept { return rows_; }
    std::uint32_t cols() const noexcept { return cols_; }
    std::uint64_t size() const noexcept { return size_; }

    DigitMatrix matrix(std::uint64_t code) const;
    std::uint64_t code(const DigitMatrix& m) const;
    std::uint64_t code(std::span<const std::uint32_t> entry_codes) const;

private:
    GroupSpec spec_;
    std::uint32_t rows_, cols_;
    std::uint64_t size_;
};

/// pair(h, g) = prod_i omega_{m_i}^{h_i g_i}, a root of unity; biadditive in both slots.
std::complex<double> pair(const GroupElement& h, const GroupElement& g);

/// Product of the entrywise pairings of two equal-shape matrices.
std::complex<double> matrix_pair(const DigitMatrix& a, const DigitMatrix& b);

/// Brute-force discrete Fourier transform over the whole matrix group:
/// out[h] = (1/|G^{s x n}|) sum_g values[g] * pair(h, g), for every character h.
/// `values` is indexed by MatrixSpace code.
std::vector<std::complex<double>> dft(const MatrixSpace& space,
                                      std::span<const std::complex<double>> values);

/// Single Fourier coefficient at character h.
std::complex<double> dft_at(const MatrixSpace& space,
                            std::span<const std::complex<double>> values,
                            const DigitMatrix& h);

/// Reconstruction from a full coefficient table:
/// out[g] = sum_h coeffs[-h] * pair(h, g).
std::vector<std::complex<double>> inverse_dft(const MatrixSpace& space,
                                              std::span<const std::complex<double>> coeffs);

struct PoissonCheck {
    std::complex<double> lhs; // (1/|P|) sum_{g in P} f(g)
    std::complex<double> rhs; // sum_{h in dual(P)} fhat(h)
};

/// Evaluates both sides of the Poisson summation identity for a subgroup P.
PoissonCheck poisson_sum_check(const MatrixSpace& space,
                               std::span<const std::complex<double>> values,
                               const PointGroup& group);

namespace detail {

/// Walks every matrix of `space` in code order while maintaining, for each
/// reference matrix, the pairing phase of the current matrix against it.
/// Phases are numerators over spec.character_order(). Amortized O(1) per step.
void scan_pair_phases(const MatrixSpace& space,
                      std::span<const DigitMatrix> refs,
                      const std::function<void(std::uint64_t code,
                                               std::span<const std::uint64_t> phases)>& visit);

} // namespace detail

} // namespace wafomlab
