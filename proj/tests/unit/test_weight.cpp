#include <doctest.h>

#include "helpers.hpp"
#include "wafomlab/weight.hpp"

using namespace wafomlab;
using testutil::matrix_from;

TEST_SUITE_BEGIN("weight");

TEST_CASE("dick weight closed cases") {
    GroupSpec z2({2});
    CHECK(dick_weight(DigitMatrix(z2, 2, 3)) == 0);

    // nonzero entries at (row 1, col 1) and (row 2, col 3): weight 1 + 3
    auto a = matrix_from(z2, 2, 3, {1, 0, 0, 0, 0, 1});
    CHECK(dick_weight(a) == 4);

    auto full = matrix_from(z2, 2, 3, {1, 1, 1, 1, 1, 1});
    CHECK(dick_weight(full) == max_dick_weight(2, 3));
    CHECK(max_dick_weight(2, 3) == 12);
}

TEST_CASE("sphere sizes of tiny spaces") {
    auto s311 = sphere_sizes(3, 1, 1, 1);
    CHECK(s311.at(0) == 1);
    CHECK(s311.at(1) == 2);

    auto s212 = sphere_sizes(2, 1, 2, 3);
    CHECK(s212.counts == std::vector<mpz_class>{1, 1, 1, 1}); // (1+x)(1+x^2)

    auto s222 = sphere_sizes(2, 2, 2, 6);
    CHECK(s222.counts == std::vector<mpz_class>{1, 2, 3, 4, 3, 2, 1}); // (1+x)^2 (1+x^2)^2
}

TEST_CASE("stabilized series counts partitions into distinct parts for b=2, s=1") {
    auto stable = sphere_sizes_stable(2, 1, 10);
    CHECK(stable.at(0) == 1);
    // Oracle: enumerate subsets of {1..10} and histogram their sums.
    std::vector<std::uint64_t> hist(11, 0);
    for (std::uint32_t mask = 0; mask < (1u << 10); ++mask) {
        std::uint64_t sum = 0;
        for (std::uint32_t k = 1; k <= 10; ++k) {
            if (mask & (1u << (k - 1))) sum += k;
        }
        if (sum <= 10) ++hist[sum];
    }
    for (std::uint32_t m = 0; m <= 10; ++m) {
        CHECK(stable.at(m) == hist[m]);
    }
    CHECK(stable.at(6) == 4); // {6}, {5,1}, {4,2}, {3,2,1}
}

TEST_CASE("finite series stabilize once n reaches the degree") {
    for (std::uint64_t b : {2ull, 3ull, 5ull}) {
        auto stable = sphere_sizes_stable(b, 2, 8);
        for (std::uint32_t n = 1; n <= 8; ++n) {
            auto finite = sphere_sizes(b, 2, n, 8);
            for (std::uint32_t m = 0; m <= n; ++m) {
                CHECK(finite.at(m) == stable.at(m));
            }
        }
    }
}

TEST_CASE("sphere sizes match the exhaustive weight histogram") {
    std::mt19937_64 rng(21);
    struct Case {
        GroupSpec spec;
        std::uint32_t s, n;
    };
    const std::vector<Case> cases = {{GroupSpec({2}), 2, 3}, {GroupSpec({3}), 1, 3},
                                     {GroupSpec({4}), 2, 2}, {GroupSpec({2, 3}), 1, 2},
                                     {GroupSpec({5}), 1, 2}, {GroupSpec({2, 2}), 2, 2}};
    for (const auto& c : cases) {
        MatrixSpace space(c.spec, c.s, c.n, 1 << 20);
        const auto top = std::uint32_t(max_dick_weight(c.s, c.n));
        std::vector<std::uint64_t> hist(top + 1, 0);
        for (std::uint64_t code = 0; code < space.size(); ++code) {
            ++hist[dick_weight(space.matrix(code))];
        }
        auto series = sphere_sizes(c.spec.order(), c.s, c.n, top);
        for (std::uint32_t m = 0; m <= top; ++m) {
            CHECK(series.at(m) == hist[m]);
        }
    }
}

TEST_CASE("sphere sizes sum to the space cardinality") {
    for (std::uint64_t b : {2ull, 3ull, 6ull}) {
        for (std::uint32_t s = 1; s <= 3; ++s) {
            for (std::uint32_t n = 1; n <= 3; ++n) {
                auto series = sphere_sizes(b, s, n, std::uint32_t(max_dick_weight(s, n)));
                mpz_class total = 0;
                for (const auto& c : series.counts) total += c;
                mpz_class expected;
                mpz_ui_pow_ui(expected.get_mpz_t(), b, std::size_t(s) * n);
                CHECK(total == expected);
            }
        }
    }
}

TEST_CASE("sphere sizes grow with s and n") {
    for (std::uint32_t m = 0; m <= 6; ++m) {
        for (std::uint32_t s = 1; s <= 3; ++s) {
            for (std::uint32_t n = 1; n <= 3; ++n) {
                auto base = sphere_sizes(3, s, n, 6);
                auto more_s = sphere_sizes(3, s + 1, n, 6);
                auto more_n = sphere_sizes(3, s, n + 1, 6);
                CHECK(more_s.at(m) >= base.at(m));
                CHECK(more_n.at(m) >= base.at(m));
            }
        }
    }
}

TEST_CASE("volume closed cases") {
    CHECK(volume(2, 1, 2, 0) == 1);
    CHECK(volume(2, 1, 3, 2) == 3);
    CHECK(volume(2, 1, 2, 2) == 3);
    // beyond the largest weight the ball is the whole space
    CHECK(volume(2, 2, 2, 100) == 16);
    CHECK(volume(3, 1, 2, 100) == 9);
}

TEST_CASE("volume bound closed cases") {
    CHECK(volume_bound(2, 1, 0) == doctest::Approx(1.0));
    CHECK(volume_stable(2, 1, 0) == 1);

    // vol_1(4) = 7 for b = 2: weights 0..4 of distinct-part partitions
    CHECK(volume_stable(2, 1, 4) == 7);
    CHECK(volume_bound(2, 1, 4) == doctest::Approx(std::exp(4.0)));
    CHECK(7.0 <= volume_bound(2, 1, 4));

    const double bound = volume_bound(3, 2, 3);
    CHECK(bound == doctest::Approx(std::exp(2.0 * std::sqrt(12.0))));
    CHECK(volume_stable(3, 2, 3).get_d() <= bound);
}

TEST_CASE("exponential bound dominates the exact counts on a grid") {
    for (std::uint64_t b = 2; b <= 5; ++b) {
        for (std::uint32_t s = 1; s <= 8; ++s) {
            auto stable = sphere_sizes_stable(b, s, 40);
            mpz_class ball = 0;
            for (std::uint32_t M = 0; M <= 40; ++M) {
                ball += stable.at(M);
                const double bound = volume_bound(b, s, double(M));
                CHECK(mpq_class(ball).get_d() <= bound * (1 + 1e-12));
                CHECK(mpq_class(stable.at(M)).get_d() <= bound * (1 + 1e-12));
                // the finite-n ball is no larger than the stabilized one
                if (M <= 12 && s <= 3) {
                    CHECK(volume(b, s, 4, M) <= ball);
                }
            }
        }
    }
}

TEST_SUITE_END();
