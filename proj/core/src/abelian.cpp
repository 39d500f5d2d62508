#include "wafomlab/abelian.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "wafomlab/netgen.hpp"
#include "phase_scan.hpp"

namespace wafomlab {

namespace {

std::uint64_t smallest_prime_factor_of(std::uint64_t n) {
    if (n % 2 == 0) return 2;
    for (std::uint64_t p = 3; p * p <= n; p += 2) {
        if (n % p == 0) return p;
    }
    return n;
}

std::complex<double> root_of_unity(std::uint64_t numerator, std::uint64_t denominator) {
    const double angle = 2.0 * std::numbers::pi * (double(numerator) / double(denominator));
    return std::polar(1.0, angle);
}

} // namespace

GroupSpec::GroupSpec(std::vector<std::uint32_t> moduli) : moduli_(std::move(moduli)) {
    if (moduli_.empty()) {
        throw error("group spec needs at least one cyclic factor");
    }
    places_.resize(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        const std::uint32_t m = moduli_[i];
        if (m < 2) {
            throw error("cyclic factor order must be at least 2, got " + std::to_string(m));
        }
        places_[i] = order_;
        if (order_ > (std::uint64_t(1) << 32) / m) {
            throw capacity_error("group order exceeds the supported 2^32 element-code range");
        }
        order_ *= m;
        lcm_ = std::lcm(lcm_, std::uint64_t(m));
    }
    smallest_prime_ = smallest_prime_factor_of(std::uint64_t(moduli_[0]));
    for (std::size_t i = 1; i < moduli_.size(); ++i) {
        smallest_prime_ = std::min(smallest_prime_, smallest_prime_factor_of(moduli_[i]));
    }
}

std::uint32_t GroupSpec::add(std::uint32_t a, std::uint32_t b) const noexcept {
    if (moduli_.size() == 1) {
        const std::uint64_t s = std::uint64_t(a) + b;
        return std::uint32_t(s >= order_ ? s - order_ : s);
    }
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        const std::uint32_t m = moduli_[i];
        std::uint32_t ra = std::uint32_t((a / places_[i]) % m);
        std::uint32_t rb = std::uint32_t((b / places_[i]) % m);
        std::uint32_t r = ra + rb;
        if (r >= m) r -= m;
        out += std::uint32_t(r * places_[i]);
    }
    return out;
}

std::uint32_t GroupSpec::negate(std::uint32_t a) const noexcept {
    if (moduli_.size() == 1) {
        return a == 0 ? 0 : std::uint32_t(order_ - a);
    }
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        const std::uint32_t m = moduli_[i];
        std::uint32_t r = std::uint32_t((a / places_[i]) % m);
        if (r != 0) r = m - r;
        out += std::uint32_t(r * places_[i]);
    }
    return out;
}

std::uint32_t GroupSpec::scale(std::uint64_t k, std::uint32_t a) const noexcept {
    std::uint32_t out = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        const std::uint32_t m = moduli_[i];
        const std::uint64_t r = (a / places_[i]) % m;
        out += std::uint32_t(((k % m) * r % m) * places_[i]);
    }
    return out;
}

std::vector<std::uint32_t> GroupSpec::residues(std::uint32_t code) const {
    std::vector<std::uint32_t> out(moduli_.size());
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        out[i] = std::uint32_t((code / places_[i]) % moduli_[i]);
    }
    return out;
}

std::uint32_t GroupSpec::code_of(std::span<const std::uint32_t> residues) const {
    if (residues.size() != moduli_.size()) {
        throw error("residue tuple has wrong length for this group");
    }
    std::uint64_t code = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (residues[i] >= moduli_[i]) {
            throw error("residue " + std::to_string(residues[i]) + " out of range for modulus " +
                        std::to_string(moduli_[i]));
        }
        code += std::uint64_t(residues[i]) * places_[i];
    }
    return std::uint32_t(code);
}

std::uint64_t GroupSpec::pairing_phase(std::uint32_t h, std::uint32_t g) const noexcept {
    std::uint64_t phase = 0;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        const std::uint64_t m = moduli_[i];
        const std::uint64_t rh = (h / places_[i]) % m;
        const std::uint64_t rg = (g / places_[i]) % m;
        phase += (rh * rg % m) * (lcm_ / m);
        if (phase >= lcm_) phase -= lcm_;
    }
    return phase;
}

std::uint64_t GroupSpec::digit_phase_weight(std::size_t factor, std::uint32_t residue) const noexcept {
    return std::uint64_t(residue) * (lcm_ / moduli_[factor]);
}

std::string GroupSpec::to_string() const {
    std::ostringstream os;
    for (std::size_t i = 0; i < moduli_.size(); ++i) {
        if (i) os << ',';
        os << moduli_[i];
    }
    return os.str();
}

bool GroupElement::is_zero() const noexcept {
    return std::all_of(residues.begin(), residues.end(), [](std::uint32_t r) { return r == 0; });
}

DigitMatrix::DigitMatrix(GroupSpec spec, std::uint32_t rows, std::uint32_t cols)
    : spec_(std::move(spec)), rows_(rows), cols_(cols),
      codes_(std::size_t(rows) * cols, 0) {
    if (rows_ == 0 || cols_ == 0) throw error("matrix shape must be positive");
}

DigitMatrix::DigitMatrix(GroupSpec spec, std::uint32_t rows, std::uint32_t cols,
                         std::vector<std::uint32_t> codes)
    : spec_(std::move(spec)), rows_(rows), cols_(cols), codes_(std::move(codes)) {
    if (rows_ == 0 || cols_ == 0) throw error("matrix shape must be positive");
    if (codes_.size() != std::size_t(rows_) * cols_) {
        throw error("entry count does not match matrix shape");
    }
    for (std::uint32_t c : codes_) {
        if (c >= spec_.order()) throw error("entry code out of range for group");
    }
}

void DigitMatrix::set_entry_code(std::uint32_t i, std::uint32_t j, std::uint32_t code) {
    if (code >= spec_.order()) throw error("entry code out of range for group");
    codes_[std::size_t(i) * cols_ + j] = code;
}

GroupElement DigitMatrix::entry(std::uint32_t i, std::uint32_t j) const {
    return GroupElement{spec_, spec_.residues(entry_code(i, j))};
}

void DigitMatrix::set_entry(std::uint32_t i, std::uint32_t j, const GroupElement& e) {
    if (e.spec != spec_) throw spec_mismatch_error("entry belongs to a different group");
    codes_[std::size_t(i) * cols_ + j] = spec_.code_of(e.residues);
}

bool DigitMatrix::is_zero() const noexcept {
    return std::all_of(codes_.begin(), codes_.end(), [](std::uint32_t c) { return c == 0; });
}

DigitMatrix DigitMatrix::operator+(const DigitMatrix& other) const {
    if (spec_ != other.spec_) throw spec_mismatch_error("matrix addition across different groups");
    if (rows_ != other.rows_ || cols_ != other.cols_) {
        throw error("matrix addition across different shapes");
    }
    std::vector<std::uint32_t> out(codes_.size());
    for (std::size_t t = 0; t < codes_.size(); ++t) out[t] = spec_.add(codes_[t], other.codes_[t]);
    return DigitMatrix(spec_, rows_, cols_, std::move(out));
}

DigitMatrix DigitMatrix::negated() const {
    std::vector<std::uint32_t> out(codes_.size());
    for (std::size_t t = 0; t < codes_.size(); ++t) out[t] = spec_.negate(codes_[t]);
    return DigitMatrix(spec_, rows_, cols_, std::move(out));
}

DigitMatrix DigitMatrix::scaled(std::uint64_t k) const {
    std::vector<std::uint32_t> out(codes_.size());
    for (std::size_t t = 0; t < codes_.size(); ++t) out[t] = spec_.scale(k, codes_[t]);
    return DigitMatrix(spec_, rows_, cols_, std::move(out));
}

bool DigitMatrix::operator==(const DigitMatrix& other) const noexcept {
    return spec_ == other.spec_ && rows_ == other.rows_ && cols_ == other.cols_ &&
           codes_ == other.codes_;
}

MatrixList::MatrixList(GroupSpec spec, std::uint32_t rows, std::uint32_t cols)
    : spec_(std::move(spec)), rows_(rows), cols_(cols) {}

std::span<const std::uint32_t> MatrixList::view(std::size_t idx) const noexcept {
    const std::size_t epm = entries_per_matrix();
    return {flat_.data() + idx * epm, epm};
}

DigitMatrix MatrixList::at(std::size_t idx) const {
    auto v = view(idx);
    return DigitMatrix(spec_, rows_, cols_, std::vector<std::uint32_t>(v.begin(), v.end()));
}

void MatrixList::push_back(std::span<const std::uint32_t> codes) {
    if (codes.size() != entries_per_matrix()) throw error("matrix shape mismatch in list append");
    flat_.insert(flat_.end(), codes.begin(), codes.end());
    ++count_;
}

void MatrixList::push_back(const DigitMatrix& m) {
    if (m.spec() != spec_ || m.rows() != rows_ || m.cols() != cols_) {
        throw spec_mismatch_error("matrix does not match list shape or group");
    }
    push_back(m.codes());
}

void MatrixList::reserve(std::size_t count) { flat_.reserve(count * entries_per_matrix()); }

MatrixList MatrixList::from_flat(GroupSpec spec, std::uint32_t rows, std::uint32_t cols,
                                 std::vector<std::uint32_t> flat) {
    MatrixList out(std::move(spec), rows, cols);
    const std::size_t epm = out.entries_per_matrix();
    if (epm == 0 || flat.size() % epm != 0) {
        throw error("flat buffer size is not a multiple of the matrix shape");
    }
    out.count_ = flat.size() / epm;
    out.flat_ = std::move(flat);
    return out;
}

MatrixSpace::MatrixSpace(GroupSpec spec, std::uint32_t rows, std::uint32_t cols,
                         std::uint64_t capacity)
    : spec_(std::move(spec)), rows_(rows), cols_(cols), size_(1) {
    const std::uint64_t b = spec_.order();
    for (std::size_t t = 0; t < std::size_t(rows_) * cols_; ++t) {
        if (size_ > capacity / b) {
            throw capacity_error("matrix group of order " + std::to_string(spec_.order()) + "^" +
                                 std::to_string(std::size_t(rows_) * cols_) +
                                 " exceeds the enumeration cap " + std::to_string(capacity));
        }
        size_ *= b;
    }
}

DigitMatrix MatrixSpace::matrix(std::uint64_t code) const {
    const std::uint64_t b = spec_.order();
    std::vector<std::uint32_t> codes(std::size_t(rows_) * cols_);
    for (auto& c : codes) {
        c = std::uint32_t(code % b);
        code /= b;
    }
    return DigitMatrix(spec_, rows_, cols_, std::move(codes));
}

std::uint64_t MatrixSpace::code(const DigitMatrix& m) const {
    if (m.spec() != spec_ || m.rows() != rows_ || m.cols() != cols_) {
        throw spec_mismatch_error("matrix does not belong to this space");
    }
    return code(m.codes());
}

std::uint64_t MatrixSpace::code(std::span<const std::uint32_t> entry_codes) const {
    const std::uint64_t b = spec_.order();
    std::uint64_t out = 0;
    for (std::size_t t = entry_codes.size(); t-- > 0;) out = out * b + entry_codes[t];
    return out;
}

std::complex<double> pair(const GroupElement& h, const GroupElement& g) {
    if (h.spec != g.spec) throw spec_mismatch_error("pairing of elements from different groups");
    const auto& spec = h.spec;
    std::uint64_t phase = 0;
    const std::uint64_t lcm = spec.character_order();
    for (std::size_t i = 0; i < spec.rank(); ++i) {
        const std::uint64_t m = spec.moduli()[i];
        phase += (std::uint64_t(h.residues[i]) * g.residues[i] % m) * (lcm / m);
        if (phase >= lcm) phase -= lcm;
    }
    return root_of_unity(phase, lcm);
}

std::complex<double> matrix_pair(const DigitMatrix& a, const DigitMatrix& b) {
    if (a.spec() != b.spec()) throw spec_mismatch_error("pairing of matrices over different groups");
    if (a.rows() != b.rows() || a.cols() != b.cols()) {
        throw error("pairing of matrices with different shapes");
    }
    const auto& spec = a.spec();
    const std::uint64_t lcm = spec.character_order();
    std::uint64_t phase = 0;
    auto ca = a.codes(), cb = b.codes();
    for (std::size_t t = 0; t < ca.size(); ++t) {
        phase += spec.pairing_phase(ca[t], cb[t]);
        if (phase >= lcm) phase -= lcm;
    }
    return root_of_unity(phase, lcm);
}

std::vector<std::complex<double>> dft(const MatrixSpace& space,
                                      std::span<const std::complex<double>> values) {
    if (values.size() != space.size()) throw error("value table does not cover the matrix group");
    const std::uint64_t n = space.size();
    std::vector<std::complex<double>> out(n);
    for (std::uint64_t h = 0; h < n; ++h) {
        out[h] = dft_at(space, values, space.matrix(h));
    }
    return out;
}

std::complex<double> dft_at(const MatrixSpace& space,
                            std::span<const std::complex<double>> values,
                            const DigitMatrix& h) {
    if (values.size() != space.size()) throw error("value table does not cover the matrix group");
    const DigitMatrix refs[] = {h};
    const auto cis = detail::phase_table(space.spec());
    std::complex<double> sum = 0.0;
    detail::phase_scan(space, refs,
                       [&](std::uint64_t code, std::span<const std::uint64_t> phases) {
                           sum += values[code] * cis[phases[0]];
                       });
    return sum / double(space.size());
}

std::vector<std::complex<double>> inverse_dft(const MatrixSpace& space,
                                              std::span<const std::complex<double>> coeffs) {
    if (coeffs.size() != space.size()) throw error("coefficient table does not cover the group");
    const std::uint64_t n = space.size();
    const auto cis = detail::phase_table(space.spec());
    std::vector<std::complex<double>> out(n);
    // sum_h coeffs[-h] pair(h, g) = sum_h coeffs[h] conj(pair(h, g)); the pairing is
    // symmetric under the self-identification, so scan h against the fixed g.
    for (std::uint64_t g = 0; g < n; ++g) {
        const DigitMatrix refs[] = {space.matrix(g)};
        std::complex<double> sum = 0.0;
        detail::phase_scan(space, refs,
                           [&](std::uint64_t code, std::span<const std::uint64_t> phases) {
                               sum += coeffs[code] * std::conj(cis[phases[0]]);
                           });
        out[g] = sum;
    }
    return out;
}

PoissonCheck poisson_sum_check(const MatrixSpace& space,
                               std::span<const std::complex<double>> values,
                               const PointGroup& group) {
    if (values.size() != space.size()) throw error("value table does not cover the matrix group");
    if (group.spec() != space.spec() || group.rows() != space.rows() ||
        group.cols() != space.cols()) {
        throw spec_mismatch_error("point group does not live in this matrix space");
    }

    std::complex<double> lhs = 0.0;
    const auto& elems = group.elements();
    for (std::size_t i = 0; i < elems.size(); ++i) {
        lhs += values[space.code(elems.view(i))];
    }
    lhs /= double(group.order());

    const MatrixList dual_list = dual(group, space.size());
    std::vector<DigitMatrix> refs;
    refs.reserve(dual_list.size());
    for (std::size_t i = 0; i < dual_list.size(); ++i) refs.push_back(dual_list.at(i));

    const auto cis = detail::phase_table(space.spec());
    std::vector<std::complex<double>> sums(refs.size(), 0.0);
    detail::phase_scan(space, refs,
                       [&](std::uint64_t code, std::span<const std::uint64_t> phases) {
                           for (std::size_t r = 0; r < sums.size(); ++r) {
                               sums[r] += values[code] * cis[phases[r]];
                           }
                       });
    std::complex<double> rhs = 0.0;
    for (auto& s : sums) rhs += s;
    rhs /= double(space.size());
    return {lhs, rhs};
}

namespace detail {

void scan_pair_phases(const MatrixSpace& space,
                      std::span<const DigitMatrix> refs,
                      const std::function<void(std::uint64_t,
                                               std::span<const std::uint64_t>)>& visit) {
    phase_scan(space, refs, visit);
}

} // namespace detail

} // namespace wafomlab
