#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "wafomlab/netgen.hpp"
#include "wafomlab/wafom.hpp"

namespace wafomlab {

enum class SearchObjective { min_wafom, max_min_weight };

struct SearchConfig {
    GroupSpec group;
    std::uint32_t s = 1;
    std::uint32_t n = 1;
    std::uint32_t d = 1;
    std::uint32_t trials = 1;
    std::uint64_t seed = 0;
    SearchObjective objective = SearchObjective::min_wafom;
    std::optional<std::uint64_t> target_min_weight;
    unsigned threads = 1;
    std::uint64_t capacity = kDefaultEnumerationCap;
};

struct TrialSummary {
    std::uint32_t index = 0;
    double wafom = 0;
    std::optional<std::uint64_t> min_weight; // empty when not computed or infinite
    bool min_weight_infinite = false;
};

struct SearchResult {
    SearchConfig config;
    std::vector<TrialSummary> history;
    std::uint32_t best_index = 0;
    GeneratorSet best_generators;
    WafomReport best_report;
    std::optional<double> theorem_bound; // existence bound at (b, s, d), c = 1, when admissible
    std::optional<bool> bound_met;       // best wafom <= theorem_bound
    std::optional<double> success_bound; // probability bound for min weight >= target
    std::optional<double> success_rate;  // observed fraction of trials with min weight >= target
};

/// Deterministic per-trial stream: identical (seed, index) gives an identical engine.
std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index);

/// d matrices with independent, uniform entries (each residue sampled mod its
/// modulus). Consumes one 64-bit draw per residue, generators in order,
/// positions row-major.
GeneratorSet random_generator_set(std::mt19937_64& rng, const GroupSpec& group,
                                  std::uint32_t s, std::uint32_t n, std::uint32_t d);

/// Seeded random search over spans of d uniform generators. Evaluates WAFOM
/// every trial and the minimum dual Dick weight when the objective or a target
/// asks for it; the result is a pure function of the config.
SearchResult run_search(const SearchConfig& cfg);

/// Lower bound max(0, 1 - (vol_{s,n}(M-1) - 1) p_b^-d) on the probability that
/// a random d-generator span has minimum dual Dick weight >= M.
double success_probability_bound(std::uint64_t b, std::uint64_t p_b, std::uint32_t s,
                                 std::uint32_t n, std::uint32_t d, std::uint64_t M);

} // namespace wafomlab
