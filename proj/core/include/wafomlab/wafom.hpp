#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include <gmpxx.h>

#include "wafomlab/enumerator.hpp"

namespace wafomlab {

/// Walsh figure of merit, identity-based fast path:
///   WAFOM(P) = -1 + (1/|P|) sum_{B in P} prod_{i,j} (1 + eta(b_ij) b^{-j}).
/// Per-point products go through log1p/expm1 and the sum over P is compensated,
/// so the result is accurate to ~1e-14 absolute even under heavy cancellation.
/// The reduction is chunked deterministically; the value does not depend on the
/// thread count.
double wafom_fast(const PointGroup& group, unsigned threads = 1);

/// Exact rational WAFOM, W(1, 1/b) - 1 via the untruncated weight enumerator.
/// Canonicalized (lowest terms).
mpq_class wafom_exact(const PointGroup& group, unsigned threads = 1);

/// Oracle path: sum of b^{-mu(A)} over the nonzero elements of an explicit dual list.
double wafom_dual(const MatrixList& dual_elements);

/// Exact tail sum_{m >= M} S_{s,n}(m) b^{-m} (finite; bounds WAFOM from above by
/// the minimum dual weight).
mpq_class tail_exact_rational(std::uint64_t b, std::uint32_t s, std::uint32_t n,
                              std::uint64_t M);
double tail_exact(std::uint64_t b, std::uint32_t s, std::uint32_t n, std::uint64_t M);

/// Closed-form tail bound (1 + (1+c)/(c log b)) b^{-M'} e^{2 sqrt((b-1) s M')},
/// valid for M' >= (1+c)^2 (log b)^{-2} (b-1) s; throws precondition_error with
/// the minimal admissible M' otherwise.
double tail_bound(std::uint64_t b, std::uint32_t s, double M_prime, double c);

/// Exact ceiling s q(q+1)/2 + (q+1)(r+1) on the minimum dual Dick weight of any
/// proper subgroup with |P| <= b^d, where d = q s + r, 0 <= r < s.
std::uint64_t min_weight_ceiling(std::uint32_t s, std::uint64_t d);

/// b^{-min_weight_ceiling(s, d)}: a WAFOM lower bound valid for every d, s.
double wafom_lower_bound_unconditional(std::uint64_t b, std::uint32_t s, std::uint64_t d);

/// Conditional lower bound b^{-C d^2 / s}; requires C > 1/2 and
/// d/s >= (sqrt(C + 1/16) + 3/4) / (C - 1/2).
double wafom_lower_bound(std::uint64_t b, std::uint32_t s, std::uint64_t d, double C);

/// Guaranteed-existence bound: some subgroup with |P| <= b^d satisfies
///   WAFOM <= (1 + (1+c)/(c log b)) b^{-A^2 d^2 / ((b-1)s)} e^{2 A d},
/// for 0 < A <= alpha_b = log(p_b)/2, c > 0 and d >= (1+c)(b-1)s/(A log b).
double existence_bound(std::uint64_t b, std::uint64_t p_b, std::uint32_t s, std::uint64_t d,
                       double A, double c);

/// alpha_b = log(p_b)/2 with p_b the smallest prime factor of b.
double alpha_of(std::uint64_t b);
std::uint64_t smallest_prime_factor(std::uint64_t n);

/// Two-sided window on log_b of the best achievable WAFOM at (b, s, d), with
/// the base-derived constants D = alpha_b, E = smallest integer above
/// (b-1)/(D log b), c from E = (1+c)(b-1)/(D log b) and C = 1/2 + 3/(2E) + 1/E^2.
/// Requires d/s >= E.
struct OrderWindow {
    double D = 0;
    std::uint64_t E = 0;
    double c = 0;
    double C = 0;
    double lower_exponent = 0; // -C d^2/s
    double upper_exponent = 0; // -D^2 d^2/((b-1)s) + 2 D d/log b + log_b(1 + (1+c)/(c log b))
};
OrderWindow order_window(std::uint64_t b, std::uint32_t s, std::uint64_t d);

/// Free parameters of the closed-form bounds, with their admissibility rules.
struct BoundParams {
    double c = 1.0;             // tail/existence parameter, > 0
    std::optional<double> C;    // lower-bound constant, > 1/2
    std::optional<double> A;    // existence exponent, 0 < A <= alpha_b

    void validate(std::uint64_t b) const;
};

struct WafomReport {
    std::uint64_t base = 2;
    std::string moduli;
    std::uint32_t s = 0;
    std::uint32_t n = 0;
    std::uint64_t num_points = 1;
    std::uint32_t log_num_points = 0; // d = ceil(log_b |P|)
    double wafom = 0;
    std::optional<double> wafom_log_b;              // empty when wafom <= 0
    std::string method;                             // fast | exact-rational | dual-oracle
    std::optional<std::string> wafom_exact_str;     // canonical fraction, exact path only
    bool min_weight_computed = false;
    bool min_weight_infinite = false;
    std::optional<std::uint64_t> min_weight;
    std::optional<double> lower_bound;              // unconditional, proper subgroups
    std::optional<double> existence_bound_value;    // c = 1, A = alpha_b, when admissible
    std::optional<std::uint64_t> seed;
};

struct ReportOptions {
    bool exact = false;
    bool with_min_weight = false;
    unsigned threads = 1;
    std::optional<std::uint64_t> seed;
};

/// Full quality report for one point group.
WafomReport evaluate(const PointGroup& group, const ReportOptions& opts = {});

} // namespace wafomlab
