#include "wafomlab/netgen.hpp"

#include <algorithm>
#include <charconv>
#include <cstring>
#include <fstream>
#include <sstream>

#include "phase_scan.hpp"

namespace wafomlab {

namespace {

std::uint64_t mix_hash(std::span<const std::uint32_t> key) {
    std::uint64_t h = 0xcbf29ce484222325ull;
    for (std::uint32_t v : key) {
        h ^= v;
        h *= 0x100000001b3ull;
    }
    h ^= h >> 33;
    h *= 0xff51afd7ed558ccdull;
    h ^= h >> 33;
    return h;
}

// Open-addressing set of matrices keyed by index into a shared flat code buffer.
class ElementIndex {
public:
    ElementIndex(const std::vector<std::uint32_t>& flat, std::size_t entries_per_matrix)
        : flat_(flat), epm_(entries_per_matrix) {
        slots_.assign(64, kEmpty);
    }

    bool contains(std::span<const std::uint32_t> key) const {
        std::size_t mask = slots_.size() - 1;
        std::size_t pos = mix_hash(key) & mask;
        while (slots_[pos] != kEmpty) {
            if (equals(slots_[pos], key)) return true;
            pos = (pos + 1) & mask;
        }
        return false;
    }

    // idx refers to an element already appended to the flat buffer.
    void insert(std::size_t idx) {
        if ((count_ + 1) * 10 > slots_.size() * 7) grow();
        insert_slot(idx);
        ++count_;
    }

private:
    static constexpr std::size_t kEmpty = std::size_t(-1);

    bool equals(std::size_t idx, std::span<const std::uint32_t> key) const {
        return std::memcmp(flat_.data() + idx * epm_, key.data(),
                           epm_ * sizeof(std::uint32_t)) == 0;
    }

    std::span<const std::uint32_t> key_of(std::size_t idx) const {
        return {flat_.data() + idx * epm_, epm_};
    }

    void insert_slot(std::size_t idx) {
        std::size_t mask = slots_.size() - 1;
        std::size_t pos = mix_hash(key_of(idx)) & mask;
        while (slots_[pos] != kEmpty) pos = (pos + 1) & mask;
        slots_[pos] = idx;
    }

    void grow() {
        std::vector<std::size_t> old = std::move(slots_);
        slots_.assign(old.size() * 2, kEmpty);
        for (std::size_t s : old) {
            if (s != kEmpty) insert_slot(s);
        }
    }

    const std::vector<std::uint32_t>& flat_;
    std::size_t epm_;
    std::vector<std::size_t> slots_;
    std::size_t count_ = 0;
};

void add_codes(const GroupSpec& spec, std::span<const std::uint32_t> a,
               std::span<const std::uint32_t> b, std::uint32_t* out) {
    for (std::size_t t = 0; t < a.size(); ++t) out[t] = spec.add(a[t], b[t]);
}

// Grows `flat` (a subgroup element buffer, zero element first) by the cyclic
// extension with generator g: appends the cosets P + k*g for k = 1..t-1 where t
// is the order of g modulo the current subgroup. Returns the new element count.
std::uint64_t extend_by_generator(const GroupSpec& spec, std::vector<std::uint32_t>& flat,
                                  ElementIndex& index, std::uint64_t order,
                                  const DigitMatrix& g, std::uint64_t capacity) {
    const std::size_t epm = g.codes().size();

    DigitMatrix multiple = g; // k*g for the probe below
    std::uint64_t t = 1;
    while (!index.contains(multiple.codes())) {
        multiple = multiple + g;
        ++t;
    }
    if (t == 1) return order;

    if (order > capacity / t) {
        throw capacity_error("subgroup span exceeds the enumeration cap of " +
                             std::to_string(capacity) + " elements");
    }

    const std::size_t base_count = order;
    flat.reserve(std::size_t(order) * t * epm);
    std::vector<std::uint32_t> scratch(epm);
    DigitMatrix kg = g;
    for (std::uint64_t k = 1; k < t; ++k) {
        for (std::size_t e = 0; e < base_count; ++e) {
            const std::uint32_t* base = flat.data() + e * epm;
            add_codes(spec, {base, epm}, kg.codes(), scratch.data());
            const std::size_t idx = flat.size() / epm;
            flat.insert(flat.end(), scratch.begin(), scratch.end());
            index.insert(idx);
        }
        if (k + 1 < t) kg = kg + g;
    }
    return order * t;
}

} // namespace

void GeneratorSet::validate() const {
    if (s == 0 || n == 0) throw error("generator set needs positive s and n");
    if (generators.empty()) throw error("generator set must contain at least one matrix");
    for (const auto& g : generators) {
        if (g.spec() != group) throw spec_mismatch_error("generator over a different group");
        if (g.rows() != s || g.cols() != n) throw error("generator with wrong shape");
    }
}

void GeneratingMatrices::validate() const {
    if (base < 2) throw error("digital net base must be at least 2");
    if (s == 0 || n == 0 || d == 0) throw error("generating matrices need positive s, n, d");
    if (matrices.size() != s) throw error("expected one generating matrix per coordinate");
    for (const auto& c : matrices) {
        if (c.size() != std::size_t(n) * d) throw error("generating matrix with wrong shape");
        for (std::uint32_t v : c) {
            if (v >= base) throw error("generating matrix entry out of range for base");
        }
    }
}

GeneratorSet to_generator_set(const GeneratingMatrices& gm) {
    gm.validate();
    GroupSpec spec({std::uint32_t(gm.base)});
    GeneratorSet out{spec, gm.s, gm.n, {}};
    out.generators.reserve(gm.d);
    for (std::uint32_t i = 0; i < gm.d; ++i) {
        DigitMatrix x(spec, gm.s, gm.n);
        for (std::uint32_t j = 0; j < gm.s; ++j) {
            for (std::uint32_t l = 0; l < gm.n; ++l) {
                // row j of X_i is the i-th column of C_j
                x.set_entry_code(j, l, gm.matrices[j][std::size_t(l) * gm.d + i]);
            }
        }
        out.generators.push_back(std::move(x));
    }
    return out;
}

PointGroup PointGroup::make(GroupSpec spec, std::uint32_t s, std::uint32_t n,
                            std::vector<std::uint32_t> flat, std::vector<DigitMatrix> gens,
                            PointGroupProvenance prov, std::optional<bool> free_basis) {
    MatrixList elems = MatrixList::from_flat(std::move(spec), s, n, std::move(flat));
    PointGroup out(std::move(elems));
    out.generators_ = std::move(gens);
    out.provenance_ = prov;
    out.free_basis_ = free_basis;
    return out;
}

PointGroup span(const GeneratorSet& gens, std::uint64_t capacity) {
    gens.validate();
    const GroupSpec& spec = gens.group;
    const std::size_t epm = std::size_t(gens.s) * gens.n;

    std::vector<std::uint32_t> flat(epm, 0); // zero matrix first
    ElementIndex index(flat, epm);
    index.insert(0);

    std::uint64_t order = 1;
    for (const DigitMatrix& g : gens.generators) {
        order = extend_by_generator(spec, flat, index, order, g, capacity);
    }
    return PointGroup::make(spec, gens.s, gens.n, std::move(flat), gens.generators,
                            PointGroupProvenance::span, std::nullopt);
}

PointGroup digital_net(const GeneratingMatrices& gm, std::uint64_t capacity) {
    gm.validate();
    GeneratorSet xs = to_generator_set(gm);
    const GroupSpec& spec = xs.group;
    const std::uint64_t b = gm.base;
    const std::size_t epm = std::size_t(gm.s) * gm.n;

    std::uint64_t total = 1;
    for (std::uint32_t i = 0; i < gm.d; ++i) {
        if (total > capacity / b) {
            throw capacity_error("digital net of b^d = " + std::to_string(gm.base) + "^" +
                                 std::to_string(gm.d) + " points exceeds the enumeration cap");
        }
        total *= b;
    }

    std::vector<std::uint32_t> flat(epm, 0);
    ElementIndex index(flat, epm);
    index.insert(0);
    std::uint64_t unique = 1;

    // Walk k = 0..b^d-1 with a digit odometer; each digit touch adds the
    // corresponding X_i (a rollover is the same addition modulo the group).
    std::vector<std::uint32_t> digits(gm.d, 0);
    std::vector<std::uint32_t> current(epm, 0);
    std::vector<std::uint32_t> scratch(epm);
    for (std::uint64_t k = 1; k < total; ++k) {
        std::size_t i = 0;
        for (;;) {
            add_codes(spec, current, xs.generators[i].codes(), scratch.data());
            current.swap(scratch);
            if (++digits[i] == b) {
                digits[i] = 0;
                ++i;
            } else {
                break;
            }
        }
        if (!index.contains(current)) {
            const std::size_t idx = flat.size() / epm;
            flat.insert(flat.end(), current.begin(), current.end());
            index.insert(idx);
            ++unique;
        }
    }

    return PointGroup::make(spec, gm.s, gm.n, std::move(flat), std::move(xs.generators),
                            PointGroupProvenance::digital_net, unique == total);
}

PointGroup whole_group(GroupSpec spec, std::uint32_t s, std::uint32_t n, std::uint64_t capacity) {
    MatrixSpace space(spec, s, n, capacity);
    const std::size_t epm = std::size_t(s) * n;
    const std::uint64_t b = spec.order();

    std::vector<std::uint32_t> flat;
    flat.reserve(space.size() * epm);
    std::vector<std::uint32_t> current(epm, 0);
    for (std::uint64_t code = 0; code < space.size(); ++code) {
        flat.insert(flat.end(), current.begin(), current.end());
        for (std::size_t t = 0; t < epm; ++t) {
            if (++current[t] == b) {
                current[t] = 0;
            } else {
                break;
            }
        }
    }

    // One generator per position and cyclic factor.
    std::vector<DigitMatrix> gens;
    for (std::uint32_t i = 0; i < s; ++i) {
        for (std::uint32_t j = 0; j < n; ++j) {
            for (std::size_t l = 0; l < spec.rank(); ++l) {
                std::vector<std::uint32_t> res(spec.rank(), 0);
                res[l] = 1;
                DigitMatrix g(spec, s, n);
                g.set_entry_code(i, j, spec.code_of(res));
                gens.push_back(std::move(g));
            }
        }
    }
    return PointGroup::make(std::move(spec), s, n, std::move(flat), std::move(gens),
                            PointGroupProvenance::whole_group, std::nullopt);
}

PointGroup trivial_group(GroupSpec spec, std::uint32_t s, std::uint32_t n) {
    std::vector<std::uint32_t> flat(std::size_t(s) * n, 0);
    return PointGroup::make(std::move(spec), s, n, std::move(flat), {},
                            PointGroupProvenance::trivial, std::nullopt);
}

PointGroup point_group_from_elements(const MatrixList& elements, std::uint64_t capacity) {
    if (elements.size() == 0) throw error("element list is empty");
    const GroupSpec& spec = elements.spec();
    const std::size_t epm = elements.entries_per_matrix();

    std::vector<std::uint32_t> flat(epm, 0);
    ElementIndex index(flat, epm);
    index.insert(0);

    std::vector<DigitMatrix> gens;
    std::uint64_t order = 1;
    for (std::size_t i = 0; i < elements.size(); ++i) {
        if (index.contains(elements.view(i))) continue;
        gens.push_back(elements.at(i));
        order = extend_by_generator(spec, flat, index, order, gens.back(), capacity);
    }
    if (order != elements.size()) {
        throw error("element list does not form a subgroup (closure has " +
                    std::to_string(order) + " elements, list has " +
                    std::to_string(elements.size()) + ")");
    }
    return PointGroup::make(spec, elements.rows(), elements.cols(), std::move(flat),
                            std::move(gens), PointGroupProvenance::explicit_elements,
                            std::nullopt);
}

bool PointGroup::is_whole_group() const {
    const std::uint64_t b = spec().order();
    const std::uint64_t target = order();
    std::uint64_t full = 1;
    for (std::size_t t = 0; t < std::size_t(rows()) * cols(); ++t) {
        if (full > target / b) return false; // b^{s n} already exceeds |P|
        full *= b;
    }
    return full == target;
}

MatrixList dual(const PointGroup& group, std::uint64_t capacity) {
    const GroupSpec& spec = group.spec();
    MatrixSpace space(spec, group.rows(), group.cols(), capacity);

    const auto& gens = group.generators();
    const std::size_t epm = std::size_t(group.rows()) * group.cols();
    std::vector<std::uint32_t> flat;
    flat.reserve((space.size() / group.order()) * epm);

    // Decode candidate codes incrementally alongside the phase scan.
    std::vector<std::uint32_t> current(epm, 0);
    std::uint64_t last_code = 0;
    const std::uint64_t b = spec.order();
    auto advance_to = [&](std::uint64_t code) {
        while (last_code < code) {
            for (std::size_t t = 0; t < epm; ++t) {
                if (++current[t] == b) {
                    current[t] = 0;
                } else {
                    break;
                }
            }
            ++last_code;
        }
    };

    detail::phase_scan(space, gens,
                       [&](std::uint64_t code, std::span<const std::uint64_t> phases) {
                           for (std::uint64_t p : phases) {
                               if (p != 0) return;
                           }
                           advance_to(code);
                           flat.insert(flat.end(), current.begin(), current.end());
                       });

    MatrixList out = MatrixList::from_flat(spec, group.rows(), group.cols(), std::move(flat));
    if (out.size() * group.order() != space.size()) {
        throw internal_error("dual size |P~| != |G^(s x n)| / |P|; point group is corrupted");
    }
    return out;
}

namespace {

std::uint64_t parse_uint(std::string_view tok, const std::string& what) {
    std::uint64_t value = 0;
    const char* begin = tok.data();
    const char* end = begin + tok.size();
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        throw parse_error("expected an unsigned integer for " + what + ", got '" +
                          std::string(tok) + "'");
    }
    return value;
}

std::vector<std::string_view> split(std::string_view text, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (start <= text.size()) {
        std::size_t pos = text.find(sep, start);
        if (pos == std::string_view::npos) {
            out.push_back(text.substr(start));
            break;
        }
        out.push_back(text.substr(start, pos - start));
        start = pos + 1;
    }
    return out;
}

std::vector<std::string_view> tokens_of(std::string_view line) {
    std::vector<std::string_view> out;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        std::size_t start = i;
        while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
        if (i > start) out.push_back(line.substr(start, i - start));
    }
    return out;
}

std::uint32_t parse_entry(const GroupSpec& spec, std::string_view tok, std::uint32_t block,
                          std::uint32_t row, std::uint32_t col) {
    const auto where = "generator " + std::to_string(block + 1) + ", row " +
                       std::to_string(row + 1) + ", column " + std::to_string(col + 1);
    auto parts = split(tok, ',');
    if (parts.size() != spec.rank()) {
        throw parse_error(where + ": entry '" + std::string(tok) + "' has " +
                          std::to_string(parts.size()) + " residues, group has rank " +
                          std::to_string(spec.rank()));
    }
    std::vector<std::uint32_t> residues(parts.size());
    for (std::size_t l = 0; l < parts.size(); ++l) {
        const std::uint64_t r = parse_uint(parts[l], where);
        if (r >= spec.moduli()[l]) {
            throw parse_error(where + ": digit " + std::to_string(r) +
                              " out of range for modulus " + std::to_string(spec.moduli()[l]));
        }
        residues[l] = std::uint32_t(r);
    }
    return spec.code_of(residues);
}

} // namespace

GeneratorSet parse_net_file(std::istream& in) {
    std::string line;
    if (!std::getline(in, line)) throw parse_error("empty net file");
    auto header = tokens_of(line);
    if (header.size() != 6 || header[0] != "wafomnet" || header[1] != "v1") {
        throw parse_error("malformed header; expected 'wafomnet v1 <moduli> <s> <n> <d>'");
    }

    std::vector<std::uint32_t> moduli;
    for (auto part : split(header[2], ',')) {
        const std::uint64_t m = parse_uint(part, "modulus");
        if (m < 2) throw parse_error("modulus must be at least 2, got " + std::to_string(m));
        moduli.push_back(std::uint32_t(m));
    }
    const std::uint64_t s = parse_uint(header[3], "s");
    const std::uint64_t n = parse_uint(header[4], "n");
    const std::uint64_t d = parse_uint(header[5], "d");
    if (s == 0 || n == 0) throw parse_error("s and n must be positive");
    if (d == 0) throw parse_error("empty generator list (d = 0)");

    GroupSpec spec(moduli);
    GeneratorSet out{spec, std::uint32_t(s), std::uint32_t(n), {}};
    out.generators.reserve(d);

    for (std::uint32_t block = 0; block < d; ++block) {
        DigitMatrix g(spec, std::uint32_t(s), std::uint32_t(n));
        for (std::uint32_t row = 0; row < s; ++row) {
            std::vector<std::string_view> toks;
            while (true) {
                if (!std::getline(in, line)) {
                    throw parse_error("truncated matrix: generator " + std::to_string(block + 1) +
                                      " is missing row " + std::to_string(row + 1));
                }
                toks = tokens_of(line);
                if (!toks.empty()) break; // blank lines between blocks are fine
            }
            if (toks.size() != n) {
                throw parse_error("generator " + std::to_string(block + 1) + ", row " +
                                  std::to_string(row + 1) + ": expected " + std::to_string(n) +
                                  " entries, got " + std::to_string(toks.size()));
            }
            for (std::uint32_t col = 0; col < n; ++col) {
                g.set_entry_code(row, col, parse_entry(spec, toks[col], block, row, col));
            }
        }
        out.generators.push_back(std::move(g));
    }

    while (std::getline(in, line)) {
        if (!tokens_of(line).empty()) throw parse_error("unexpected trailing content in net file");
    }
    return out;
}

GeneratorSet parse_net_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw parse_error("cannot open net file '" + path + "'");
    return parse_net_file(in);
}

void write_net_file(std::ostream& out, const GeneratorSet& gens) {
    gens.validate();
    const GroupSpec& spec = gens.group;
    out << "wafomnet v1 " << spec.to_string() << ' ' << gens.s << ' ' << gens.n << ' '
        << gens.d() << '\n';
    for (const auto& g : gens.generators) {
        out << '\n';
        for (std::uint32_t i = 0; i < gens.s; ++i) {
            for (std::uint32_t j = 0; j < gens.n; ++j) {
                if (j) out << ' ';
                const auto res = spec.residues(g.entry_code(i, j));
                for (std::size_t l = 0; l < res.size(); ++l) {
                    if (l) out << ',';
                    out << res[l];
                }
            }
            out << '\n';
        }
    }
}

std::string net_file_string(const GeneratorSet& gens) {
    std::ostringstream os;
    write_net_file(os, gens);
    return os.str();
}

} // namespace wafomlab
