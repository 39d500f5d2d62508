#include "wafomlab/enumerator.hpp"

#include <algorithm>
#include <ostream>
#include <thread>

namespace wafomlab {

mpz_class WeightEnumerator::mass() const {
    mpz_class total = 0;
    for (const auto& c : coeffs) total += c;
    return total;
}

bool WeightEnumerator::operator==(const WeightEnumerator& other) const {
    return base == other.base && s == other.s && n == other.n &&
           truncation_degree == other.truncation_degree && coeffs == other.coeffs;
}

std::uint32_t ceil_log(std::uint64_t base, std::uint64_t value) {
    if (base < 2) throw error("base must be at least 2");
    std::uint32_t d = 0;
    std::uint64_t pw = 1;
    while (pw < value) {
        pw = (pw > std::uint64_t(-1) / base) ? value : pw * base;
        ++d;
    }
    return d;
}

namespace {

// Coefficient tables of (1 + (b-1)u)^z (1 - u)^(s-z) for z = 0..s, degree s each.
std::vector<std::vector<mpz_class>> column_factor_tables(std::uint64_t b, std::uint32_t s) {
    std::vector<std::vector<mpz_class>> tables(s + 1);
    for (std::uint32_t z = 0; z <= s; ++z) {
        std::vector<mpz_class> poly{1};
        poly.reserve(s + 1);
        for (std::uint32_t rep = 0; rep < z; ++rep) { // * (1 + (b-1)u)
            poly.push_back(0);
            for (std::size_t m = poly.size() - 1; m >= 1; --m) {
                mpz_addmul_ui(poly[m].get_mpz_t(), poly[m - 1].get_mpz_t(), b - 1);
            }
        }
        for (std::uint32_t rep = z; rep < s; ++rep) { // * (1 - u)
            poly.push_back(0);
            for (std::size_t m = poly.size() - 1; m >= 1; --m) {
                poly[m] -= poly[m - 1];
            }
        }
        tables[z] = std::move(poly);
    }
    return tables;
}

// acc *= table(y^j), truncated to acc.size()-1.
void multiply_column_factor(std::vector<mpz_class>& acc, const std::vector<mpz_class>& table,
                            std::uint32_t j) {
    const std::size_t len = acc.size();
    for (std::size_t m = len; m-- > j;) {
        const std::size_t tmax = std::min<std::size_t>(table.size() - 1, m / j);
        for (std::size_t t = 1; t <= tmax; ++t) {
            mpz_addmul(acc[m].get_mpz_t(), table[t].get_mpz_t(), acc[m - t * j].get_mpz_t());
        }
    }
}

void accumulate_range(const PointGroup& group,
                      const std::vector<std::vector<mpz_class>>& tables, std::uint64_t degree,
                      std::size_t begin, std::size_t end, std::vector<mpz_class>& sum) {
    const std::uint32_t s = group.rows();
    const std::uint32_t n = group.cols();
    const auto& elems = group.elements();
    std::vector<std::uint32_t> zero_counts(n);
    std::vector<mpz_class> point_poly(degree + 1);

    for (std::size_t e = begin; e < end; ++e) {
        auto codes = elems.view(e);
        std::fill(zero_counts.begin(), zero_counts.end(), 0);
        for (std::uint32_t i = 0; i < s; ++i) {
            for (std::uint32_t j = 0; j < n; ++j) {
                if (codes[std::size_t(i) * n + j] == 0) ++zero_counts[j];
            }
        }
        std::fill(point_poly.begin(), point_poly.end(), 0);
        point_poly[0] = 1;
        for (std::uint32_t j = 1; j <= n && j <= degree; ++j) {
            multiply_column_factor(point_poly, tables[zero_counts[j - 1]], j);
        }
        for (std::size_t m = 0; m <= degree; ++m) sum[m] += point_poly[m];
    }
}

} // namespace

WeightEnumerator weight_enumerator(const PointGroup& group,
                                   std::optional<std::uint64_t> truncation, unsigned threads) {
    const std::uint64_t b = group.spec().order();
    const std::uint32_t s = group.rows();
    const std::uint32_t n = group.cols();
    const std::uint64_t full = max_dick_weight(s, n);
    const std::uint64_t degree = std::min(truncation.value_or(full), full);

    const auto tables = column_factor_tables(b, s);
    std::vector<mpz_class> sum(degree + 1);

    const std::size_t count = group.order();
    if (threads <= 1 || count < 1024) {
        accumulate_range(group, tables, degree, 0, count, sum);
    } else {
        const unsigned nt =
            std::max(1u, std::min<unsigned>(threads, std::thread::hardware_concurrency()));
        std::vector<std::vector<mpz_class>> partial(nt, std::vector<mpz_class>(degree + 1));
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < nt; ++t) {
            const std::size_t begin = count * t / nt;
            const std::size_t end = count * (t + 1) / nt;
            workers.emplace_back([&, t, begin, end] {
                accumulate_range(group, tables, degree, begin, end, partial[t]);
            });
        }
        for (auto& w : workers) w.join();
        for (const auto& part : partial) {
            for (std::size_t m = 0; m <= degree; ++m) sum[m] += part[m];
        }
    }

    WeightEnumerator out;
    out.base = b;
    out.s = s;
    out.n = n;
    out.group_order = group.order();
    out.full_degree = full;
    out.truncation_degree = degree;
    out.coeffs.resize(degree + 1);
    mpz_class q, r;
    for (std::size_t m = 0; m <= degree; ++m) {
        mpz_tdiv_qr_ui(q.get_mpz_t(), r.get_mpz_t(), sum[m].get_mpz_t(), group.order());
        if (r != 0 || sgn(q) < 0) {
            throw internal_error("weight enumerator sum not divisible by |P|; "
                                 "the point set is not a subgroup");
        }
        out.coeffs[m] = q;
    }
    return out;
}

WeightEnumerator direct_enumerator(const MatrixList& dual_elements) {
    const std::uint64_t b = dual_elements.spec().order();
    const std::uint32_t s = dual_elements.rows();
    const std::uint32_t n = dual_elements.cols();
    const std::uint64_t full = max_dick_weight(s, n);

    WeightEnumerator out;
    out.base = b;
    out.s = s;
    out.n = n;
    out.full_degree = full;
    out.truncation_degree = full;
    out.coeffs.assign(full + 1, 0);

    for (std::size_t e = 0; e < dual_elements.size(); ++e) {
        auto codes = dual_elements.view(e);
        std::uint64_t mu = 0;
        for (std::size_t t = 0; t < codes.size(); ++t) {
            if (codes[t] != 0) mu += t % n + 1;
        }
        out.coeffs[mu] += 1;
    }

    std::uint64_t space = 1;
    for (std::size_t t = 0; t < std::size_t(s) * n; ++t) {
        if (space > std::uint64_t(-1) / b) {
            throw capacity_error("matrix group too large to infer |P| from a dual list");
        }
        space *= b;
    }
    out.group_order = space / dual_elements.size();
    return out;
}

MinWeight min_dick_weight(const PointGroup& group, unsigned threads) {
    if (group.is_whole_group()) return {std::nullopt};

    const std::uint64_t b = group.spec().order();
    const std::uint32_t s = group.rows();
    const std::uint64_t full = max_dick_weight(s, group.cols());
    const std::uint64_t d = ceil_log(b, group.order());

    // ceil(d^2/(2s) + 3d/2 + s) = ceil((d+s)(d+2s) / (2s))
    std::uint64_t degree = ((d + s) * (d + 2 * s) + 2 * s - 1) / (2 * s);
    degree = std::min(degree, full);

    for (;;) {
        const WeightEnumerator we = weight_enumerator(group, degree, threads);
        for (std::uint64_t m = 1; m <= we.truncation_degree; ++m) {
            if (we.coeffs[m] != 0) return {m};
        }
        if (degree >= full) return {std::nullopt}; // trivial dual; unreachable for proper P
        degree = std::min(degree * 2, full);
    }
}

WeightEnumerator CompleteWeightEnumerator::specialize() const {
    WeightEnumerator out;
    out.base = base;
    out.s = s;
    out.n = n;
    out.group_order = group_order;
    out.full_degree = max_dick_weight(s, n);
    out.truncation_degree = out.full_degree;
    out.coeffs.assign(out.full_degree + 1, 0);
    for (const auto& [pattern, count] : pattern_counts) {
        std::uint64_t m = 0;
        for (std::uint32_t j = 0; j < n; ++j) m += std::uint64_t(j + 1) * pattern[j];
        out.coeffs[m] += count;
    }
    return out;
}

CompleteWeightEnumerator complete_weight_enumerator(const PointGroup& group,
                                                    std::uint64_t capacity) {
    const MatrixList dual_list = dual(group, capacity);
    const std::uint32_t s = group.rows();
    const std::uint32_t n = group.cols();

    CompleteWeightEnumerator out;
    out.base = group.spec().order();
    out.s = s;
    out.n = n;
    out.group_order = group.order();

    std::vector<std::uint32_t> pattern(n);
    for (std::size_t e = 0; e < dual_list.size(); ++e) {
        auto codes = dual_list.view(e);
        std::fill(pattern.begin(), pattern.end(), 0);
        for (std::uint32_t i = 0; i < s; ++i) {
            for (std::uint32_t j = 0; j < n; ++j) {
                if (codes[std::size_t(i) * n + j] != 0) ++pattern[j];
            }
        }
        ++out.pattern_counts[pattern];
    }
    return out;
}

void write_enumerator(std::ostream& out, const WeightEnumerator& we) {
    out << "# " << we.base << ' ' << we.s << ' ' << we.n << ' ' << we.full_degree << ' '
        << we.group_order << '\n';
    for (std::size_t m = 0; m < we.coeffs.size(); ++m) {
        out << m << ' ' << we.coeffs[m].get_str() << '\n';
    }
}

} // namespace wafomlab
