#include "wafomlab/search.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

namespace wafomlab {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    state += 0x9E3779B97F4A7C15ull;
    std::uint64_t z = state;
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
    return z ^ (z >> 31);
}

} // namespace

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
    std::uint64_t state = seed ^ (0x9E3779B97F4A7C15ull * (index + 1));
    const std::uint64_t a = splitmix64(state);
    const std::uint64_t b = splitmix64(state);
    return std::mt19937_64(a ^ (b << 1));
}

GeneratorSet random_generator_set(std::mt19937_64& rng, const GroupSpec& group,
                                  std::uint32_t s, std::uint32_t n, std::uint32_t d) {
    if (d == 0) throw error("generator count d must be positive");
    if (s == 0 || n == 0) throw error("matrix shape must be positive");
    GeneratorSet out{group, s, n, {}};
    out.generators.reserve(d);
    std::vector<std::uint32_t> residues(group.rank());
    for (std::uint32_t g = 0; g < d; ++g) {
        DigitMatrix m(group, s, n);
        for (std::uint32_t i = 0; i < s; ++i) {
            for (std::uint32_t j = 0; j < n; ++j) {
                for (std::size_t l = 0; l < group.rank(); ++l) {
                    residues[l] = std::uint32_t(rng() % group.moduli()[l]);
                }
                m.set_entry_code(i, j, group.code_of(residues));
            }
        }
        out.generators.push_back(std::move(m));
    }
    return out;
}

SearchResult run_search(const SearchConfig& cfg) {
    if (cfg.trials == 0) throw error("search needs at least one trial");
    if (cfg.d == 0) throw error("generator count d must be positive");

    const bool want_min_weight =
        cfg.objective == SearchObjective::max_min_weight || cfg.target_min_weight.has_value();

    SearchResult result;
    result.config = cfg;
    result.history.resize(cfg.trials);

    auto run_trial = [&](std::uint32_t t) {
        auto rng = trial_rng(cfg.seed, t);
        const GeneratorSet gens = random_generator_set(rng, cfg.group, cfg.s, cfg.n, cfg.d);
        const PointGroup p = span(gens, cfg.capacity);
        TrialSummary& summary = result.history[t];
        summary.index = t;
        summary.wafom = wafom_fast(p);
        if (want_min_weight) {
            const MinWeight mw = min_dick_weight(p);
            summary.min_weight = mw.value;
            summary.min_weight_infinite = mw.infinite();
        }
    };

    const unsigned nt = std::max(1u, cfg.threads);
    if (nt <= 1 || cfg.trials < 2) {
        for (std::uint32_t t = 0; t < cfg.trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> workers;
        const unsigned workers_count = std::min<unsigned>(nt, cfg.trials);
        for (unsigned w = 0; w < workers_count; ++w) {
            workers.emplace_back([&, w] {
                for (std::uint32_t t = w; t < cfg.trials; t += workers_count) run_trial(t);
            });
        }
        for (auto& th : workers) th.join();
    }

    // Pick the winner deterministically: strict improvement only, so the first
    // trial attaining the optimum wins.
    std::uint32_t best = 0;
    auto weight_key = [](const TrialSummary& ts) {
        return ts.min_weight_infinite ? std::uint64_t(-1) : ts.min_weight.value_or(0);
    };
    for (std::uint32_t t = 1; t < cfg.trials; ++t) {
        const auto& cand = result.history[t];
        const auto& incumbent = result.history[best];
        if (cfg.objective == SearchObjective::min_wafom) {
            if (cand.wafom < incumbent.wafom) best = t;
        } else {
            if (weight_key(cand) > weight_key(incumbent)) best = t;
        }
    }
    result.best_index = best;

    {
        auto rng = trial_rng(cfg.seed, best);
        result.best_generators = random_generator_set(rng, cfg.group, cfg.s, cfg.n, cfg.d);
        const PointGroup p = span(result.best_generators, cfg.capacity);
        ReportOptions opts;
        opts.with_min_weight = true;
        opts.threads = cfg.threads;
        opts.seed = cfg.seed;
        result.best_report = evaluate(p, opts);
    }

    {
        const std::uint64_t b = cfg.group.order();
        const double alpha = alpha_of(b);
        const double c = 1.0;
        const double dmin = (1 + c) * double(b - 1) * cfg.s / (alpha * std::log(double(b)));
        if (double(cfg.d) >= dmin) {
            result.theorem_bound = existence_bound(b, cfg.group.smallest_prime_factor(), cfg.s,
                                                   cfg.d, alpha, c);
            result.bound_met = result.history[best].wafom <= *result.theorem_bound;
        }
    }

    if (cfg.target_min_weight) {
        const std::uint64_t target = *cfg.target_min_weight;
        result.success_bound = success_probability_bound(
            cfg.group.order(), cfg.group.smallest_prime_factor(), cfg.s, cfg.n, cfg.d, target);
        std::uint32_t hits = 0;
        for (const auto& ts : result.history) {
            if (ts.min_weight_infinite || ts.min_weight.value_or(0) >= target) ++hits;
        }
        result.success_rate = double(hits) / double(cfg.trials);
    }
    return result;
}

double success_probability_bound(std::uint64_t b, std::uint64_t p_b, std::uint32_t s,
                                 std::uint32_t n, std::uint32_t d, std::uint64_t M) {
    if (M < 1) throw precondition_error("target minimum weight must be at least 1");
    if (p_b < 2 || b % p_b != 0) throw precondition_error("p_b must be a prime factor of b");
    const mpz_class ball = volume(b, s, n, std::uint32_t(std::min<std::uint64_t>(
                                               M - 1, max_dick_weight(s, n))));
    mpz_class misses = ball - 1; // the zero character is perpendicular for free
    mpz_class denom;
    mpz_ui_pow_ui(denom.get_mpz_t(), p_b, d);
    const mpq_class fraction(misses, denom);
    const double bound = 1.0 - mpq_class(fraction).get_d();
    return std::max(0.0, bound);
}

} // namespace wafomlab
