#include "wafomlab/wafom.hpp"

#include <algorithm>
#include <cmath>
#include <thread>
#include <vector>

namespace wafomlab {

namespace {

struct NeumaierSum {
    double sum = 0.0;
    double comp = 0.0;

    void add(double x) {
        const double t = sum + x;
        if (std::abs(sum) >= std::abs(x)) {
            comp += (sum - t) + x;
        } else {
            comp += (x - t) + sum;
        }
        sum = t;
    }
    double value() const { return sum + comp; }
};

// logf[(j-1)(s+1) + z] = log of the column-j factor when z of the s entries are zero.
std::vector<double> column_log_factors(std::uint64_t b, std::uint32_t s, std::uint32_t n) {
    std::vector<double> logf(std::size_t(n) * (s + 1));
    for (std::uint32_t j = 1; j <= n; ++j) {
        const double pw = std::pow(double(b), -double(j));
        const double lz = std::log1p(double(b - 1) * pw); // zero entry
        const double ln = std::log1p(-pw);                // nonzero entry
        for (std::uint32_t z = 0; z <= s; ++z) {
            logf[std::size_t(j - 1) * (s + 1) + z] = double(z) * lz + double(s - z) * ln;
        }
    }
    return logf;
}

double wafom_fast_range(const PointGroup& group, const std::vector<double>& logf,
                        std::size_t begin, std::size_t end) {
    const std::uint32_t s = group.rows();
    const std::uint32_t n = group.cols();
    const auto& elems = group.elements();
    std::vector<std::uint32_t> zero_counts(n);
    NeumaierSum acc;
    for (std::size_t e = begin; e < end; ++e) {
        auto codes = elems.view(e);
        std::fill(zero_counts.begin(), zero_counts.end(), 0);
        for (std::uint32_t i = 0; i < s; ++i) {
            for (std::uint32_t j = 0; j < n; ++j) {
                if (codes[std::size_t(i) * n + j] == 0) ++zero_counts[j];
            }
        }
        double sum_log = 0.0;
        for (std::uint32_t j = 0; j < n; ++j) {
            sum_log += logf[std::size_t(j) * (s + 1) + zero_counts[j]];
        }
        acc.add(std::expm1(sum_log));
    }
    return acc.value();
}

} // namespace

double wafom_fast(const PointGroup& group, unsigned threads) {
    const auto logf = column_log_factors(group.spec().order(), group.rows(), group.cols());
    const std::size_t count = group.order();

    // Fixed chunking: the reduction tree is the same for every thread count.
    const std::size_t chunks = std::min<std::size_t>(64, count);
    std::vector<double> partial(chunks, 0.0);
    auto run_chunk = [&](std::size_t c) {
        partial[c] = wafom_fast_range(group, logf, count * c / chunks, count * (c + 1) / chunks);
    };

    if (threads <= 1 || count < 4096) {
        for (std::size_t c = 0; c < chunks; ++c) run_chunk(c);
    } else {
        const unsigned nt =
            std::max(1u, std::min<unsigned>(threads, std::thread::hardware_concurrency()));
        std::vector<std::thread> workers;
        for (unsigned t = 0; t < nt; ++t) {
            workers.emplace_back([&, t] {
                for (std::size_t c = t; c < chunks; c += nt) run_chunk(c);
            });
        }
        for (auto& w : workers) w.join();
    }

    NeumaierSum total;
    for (double p : partial) total.add(p);
    // The true value is a sum of positive dual terms; a negative result is
    // pure cancellation noise.
    return std::max(0.0, total.value() / double(count));
}

mpq_class wafom_exact(const PointGroup& group, unsigned threads) {
    const WeightEnumerator we = weight_enumerator(group, std::nullopt, threads);
    const std::uint64_t b = we.base;
    mpz_class num = 0;
    for (std::uint64_t m = 1; m <= we.full_degree; ++m) { // Horner: sum a_m b^{M-m}
        num = num * b + we.coeffs[m];
    }
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), b, we.full_degree);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

double wafom_dual(const MatrixList& dual_elements) {
    const std::uint64_t b = dual_elements.spec().order();
    const std::uint32_t n = dual_elements.cols();
    const std::uint64_t full = max_dick_weight(dual_elements.rows(), n);

    std::vector<std::uint64_t> hist(full + 1, 0);
    for (std::size_t e = 0; e < dual_elements.size(); ++e) {
        auto codes = dual_elements.view(e);
        std::uint64_t mu = 0;
        for (std::size_t t = 0; t < codes.size(); ++t) {
            if (codes[t] != 0) mu += t % n + 1;
        }
        ++hist[mu];
    }

    NeumaierSum acc; // smallest terms first
    for (std::uint64_t m = full; m >= 1; --m) {
        if (hist[m] != 0) acc.add(double(hist[m]) * std::pow(double(b), -double(m)));
    }
    return acc.value();
}

mpq_class tail_exact_rational(std::uint64_t b, std::uint32_t s, std::uint32_t n,
                              std::uint64_t M) {
    const std::uint64_t full = max_dick_weight(s, n);
    if (M > full) return mpq_class(0);
    const SphereSeries series = sphere_sizes(b, s, n, std::uint32_t(full));
    mpz_class num = 0; // Horner: sum_{m=M..full} S(m) b^{full-m}
    for (std::uint64_t m = M; m <= full; ++m) num = num * b + series.at(std::uint32_t(m));
    mpz_class den;
    mpz_ui_pow_ui(den.get_mpz_t(), b, full);
    mpq_class q(num, den);
    q.canonicalize();
    return q;
}

double tail_exact(std::uint64_t b, std::uint32_t s, std::uint32_t n, std::uint64_t M) {
    return tail_exact_rational(b, s, n, M).get_d();
}

double tail_bound(std::uint64_t b, std::uint32_t s, double M_prime, double c) {
    if (c <= 0) throw precondition_error("tail bound needs c > 0");
    const double logb = std::log(double(b));
    const double min_M = (1 + c) * (1 + c) / (logb * logb) * double(b - 1) * double(s);
    if (M_prime < min_M) {
        throw precondition_error("tail bound needs M' >= (1+c)^2 (log b)^-2 (b-1) s = " +
                                 std::to_string(min_M));
    }
    const double coef = 1.0 + (1.0 + c) / (c * logb);
    return coef * std::exp(-M_prime * logb + 2.0 * std::sqrt(double(b - 1) * s * M_prime));
}

std::uint64_t min_weight_ceiling(std::uint32_t s, std::uint64_t d) {
    const std::uint64_t q = d / s;
    const std::uint64_t r = d % s;
    return std::uint64_t(s) * q * (q + 1) / 2 + (q + 1) * (r + 1);
}

double wafom_lower_bound_unconditional(std::uint64_t b, std::uint32_t s, std::uint64_t d) {
    return std::pow(double(b), -double(min_weight_ceiling(s, d)));
}

double wafom_lower_bound(std::uint64_t b, std::uint32_t s, std::uint64_t d, double C) {
    if (C <= 0.5) throw precondition_error("lower bound needs C > 1/2");
    const double threshold = (std::sqrt(C + 1.0 / 16.0) + 0.75) / (C - 0.5);
    if (double(d) / s < threshold) {
        throw precondition_error("lower bound needs d/s >= " + std::to_string(threshold));
    }
    return std::exp(-C * double(d) * double(d) / double(s) * std::log(double(b)));
}

std::uint64_t smallest_prime_factor(std::uint64_t n) {
    if (n < 2) throw error("smallest prime factor needs n >= 2");
    if (n % 2 == 0) return 2;
    for (std::uint64_t p = 3; p * p <= n; p += 2) {
        if (n % p == 0) return p;
    }
    return n;
}

double alpha_of(std::uint64_t b) { return std::log(double(smallest_prime_factor(b))) / 2.0; }

double existence_bound(std::uint64_t b, std::uint64_t p_b, std::uint32_t s, std::uint64_t d,
                       double A, double c) {
    if (b < 2 || p_b < 2 || b % p_b != 0) {
        throw precondition_error("p_b must be a prime factor of b");
    }
    const double alpha = std::log(double(p_b)) / 2.0;
    if (!(A > 0) || A > alpha + 1e-15) {
        throw precondition_error("existence bound needs 0 < A <= alpha_b = " +
                                 std::to_string(alpha));
    }
    if (c <= 0) throw precondition_error("existence bound needs c > 0");
    const double logb = std::log(double(b));
    const double dmin = (1 + c) * double(b - 1) * s / (A * logb);
    if (double(d) < dmin) {
        throw precondition_error("existence bound needs d >= (1+c)(b-1)s/(A log b) = " +
                                 std::to_string(dmin));
    }
    const double coef = 1.0 + (1.0 + c) / (c * logb);
    const double dd = double(d);
    return coef * std::exp(-A * A * dd * dd / (double(b - 1) * s) * logb + 2.0 * A * dd);
}

OrderWindow order_window(std::uint64_t b, std::uint32_t s, std::uint64_t d) {
    OrderWindow w;
    const double logb = std::log(double(b));
    w.D = alpha_of(b);
    const double ratio = double(b - 1) / (w.D * logb);
    w.E = std::uint64_t(std::floor(ratio)) + 1; // smallest integer strictly above
    w.c = double(w.E) * w.D * logb / double(b - 1) - 1.0;
    w.C = 0.5 + 3.0 / (2.0 * double(w.E)) + 1.0 / (double(w.E) * double(w.E));
    if (double(d) / s < double(w.E)) {
        throw precondition_error("order window needs d/s >= E = " + std::to_string(w.E));
    }
    const double dd = double(d);
    w.lower_exponent = -w.C * dd * dd / s;
    w.upper_exponent = -w.D * w.D * dd * dd / (double(b - 1) * s) + 2.0 * w.D * dd / logb +
                       std::log(1.0 + (1.0 + w.c) / (w.c * logb)) / logb;
    return w;
}

void BoundParams::validate(std::uint64_t b) const {
    if (c <= 0) throw precondition_error("parameter c must be positive");
    if (C && *C <= 0.5) throw precondition_error("parameter C must exceed 1/2");
    if (A && (!(*A > 0) || *A > alpha_of(b) + 1e-15)) {
        throw precondition_error("parameter A must lie in (0, alpha_b]");
    }
}

WafomReport evaluate(const PointGroup& group, const ReportOptions& opts) {
    WafomReport rep;
    rep.base = group.spec().order();
    rep.moduli = group.spec().to_string();
    rep.s = group.rows();
    rep.n = group.cols();
    rep.num_points = group.order();
    rep.log_num_points = ceil_log(rep.base, rep.num_points);
    rep.seed = opts.seed;

    if (opts.exact) {
        const mpq_class exact = wafom_exact(group, opts.threads);
        rep.wafom = exact.get_d();
        rep.method = "exact-rational";
        rep.wafom_exact_str = exact.get_str();
    } else {
        rep.wafom = wafom_fast(group, opts.threads);
        rep.method = "fast";
    }
    if (rep.wafom > 0) rep.wafom_log_b = std::log(rep.wafom) / std::log(double(rep.base));

    if (opts.with_min_weight) {
        rep.min_weight_computed = true;
        const MinWeight mw = min_dick_weight(group, opts.threads);
        rep.min_weight_infinite = mw.infinite();
        rep.min_weight = mw.value;
    }

    if (!group.is_whole_group()) {
        rep.lower_bound = wafom_lower_bound_unconditional(rep.base, rep.s, rep.log_num_points);
        const double alpha = alpha_of(rep.base);
        const double c = 1.0;
        const double logb = std::log(double(rep.base));
        const double dmin = (1 + c) * double(rep.base - 1) * rep.s / (alpha * logb);
        if (double(rep.log_num_points) >= dmin) {
            rep.existence_bound_value =
                existence_bound(rep.base, smallest_prime_factor(rep.base), rep.s,
                                rep.log_num_points, alpha, c);
        }
    }
    return rep;
}

} // namespace wafomlab
