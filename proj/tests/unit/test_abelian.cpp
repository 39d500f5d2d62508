#include <doctest.h>

#include "helpers.hpp"

using namespace wafomlab;
using testutil::cdist;
using testutil::cyclic;
using testutil::matrix_from;

TEST_SUITE_BEGIN("abelian");

TEST_CASE("group spec derived quantities") {
    GroupSpec z6({6});
    CHECK(z6.order() == 6);
    CHECK(z6.smallest_prime_factor() == 2);
    CHECK(z6.is_cyclic());

    GroupSpec z15({15});
    CHECK(z15.smallest_prime_factor() == 3);

    GroupSpec prod({2, 3});
    CHECK(prod.order() == 6);
    CHECK(prod.smallest_prime_factor() == 2);
    CHECK_FALSE(prod.is_cyclic());
    CHECK(prod.character_order() == 6);
    CHECK(prod.to_string() == "2,3");

    CHECK_THROWS_AS(GroupSpec({1}), error);
    CHECK_THROWS_AS(GroupSpec(std::vector<std::uint32_t>{}), error);
}

TEST_CASE("element arithmetic round-trips through residues") {
    GroupSpec spec({2, 3});
    for (std::uint32_t a = 0; a < 6; ++a) {
        CHECK(spec.code_of(spec.residues(a)) == a);
        CHECK(spec.add(a, spec.negate(a)) == 0);
        CHECK(spec.scale(0, a) == 0);
        CHECK(spec.scale(7, a) == spec.add(spec.scale(6, a), a));
    }
}

TEST_CASE("pairing on small cyclic groups") {
    GroupSpec z4({4});
    auto e = [&](std::uint32_t c) { return GroupElement{z4, z4.residues(c)}; };
    CHECK(cdist(pair(e(3), e(2)), {-1.0, 0.0}) < 1e-12); // omega_4^6 = -1
    CHECK(cdist(pair(e(3), e(0)), {1.0, 0.0}) < 1e-12);

    GroupSpec z6({6});
    auto f = [&](std::uint32_t c) { return GroupElement{z6, z6.residues(c)}; };
    CHECK(cdist(pair(f(2), f(3)), {1.0, 0.0}) < 1e-12); // exponent 6 = 0 mod 6
}

TEST_CASE("pairing is biadditive, unit modulus, symmetric") {
    std::mt19937_64 rng(1);
    for (const auto& spec : testutil::sweep_specs()) {
        const std::uint32_t b = std::uint32_t(spec.order());
        for (int rep = 0; rep < 20; ++rep) {
            const std::uint32_t hc = rng() % b, gc = rng() % b, gc2 = rng() % b;
            GroupElement h{spec, spec.residues(hc)};
            GroupElement g{spec, spec.residues(gc)};
            GroupElement g2{spec, spec.residues(gc2)};
            GroupElement gsum{spec, spec.residues(spec.add(gc, gc2))};
            CHECK(cdist(pair(h, gsum), pair(h, g) * pair(h, g2)) < 1e-12);
            CHECK(std::abs(std::abs(pair(h, g)) - 1.0) < 1e-14);
            CHECK(cdist(pair(h, g), pair(g, h)) < 1e-12);
        }
    }
}

TEST_CASE("pairing rejects mismatched groups") {
    GroupSpec z2({2}), z3({3});
    GroupElement a{z2, {1}}, b{z3, {1}};
    CHECK_THROWS_AS(pair(a, b), spec_mismatch_error);
}

TEST_CASE("matrix pairing closed forms") {
    GroupSpec z2({2});
    auto zero = DigitMatrix(z2, 2, 3);
    auto any = matrix_from(z2, 2, 3, {1, 0, 1, 1, 1, 0});
    CHECK(cdist(matrix_pair(zero, any), {1.0, 0.0}) < 1e-12);

    auto a2 = matrix_from(z2, 1, 2, {1, 1});
    CHECK(cdist(matrix_pair(a2, a2), {1.0, 0.0}) < 1e-12); // (-1)(-1)

    GroupSpec z3({3});
    auto a3 = matrix_from(z3, 1, 2, {1, 2});
    auto b3 = matrix_from(z3, 1, 2, {2, 2});
    CHECK(cdist(matrix_pair(a3, b3), {1.0, 0.0}) < 1e-12); // omega_3^6

    auto wrong_shape = matrix_from(z3, 2, 1, {1, 2});
    CHECK_THROWS_AS(matrix_pair(a3, wrong_shape), error);
}

TEST_CASE("dft of a constant is a delta at zero") {
    MatrixSpace space(GroupSpec({3}), 1, 2, 1 << 20);
    std::vector<std::complex<double>> values(space.size(), 1.0);
    auto coeffs = dft(space, values);
    CHECK(cdist(coeffs[0], {1.0, 0.0}) < 1e-12);
    for (std::size_t h = 1; h < coeffs.size(); ++h) {
        CHECK(std::abs(coeffs[h]) < 1e-12);
    }
}

TEST_CASE("two-point transform") {
    MatrixSpace space(GroupSpec({2}), 1, 1, 1 << 20);
    const std::complex<double> a{0.7, -0.2}, c{-1.3, 0.4};
    std::vector<std::complex<double>> values{a, c};
    auto coeffs = dft(space, values);
    CHECK(cdist(coeffs[0], (a + c) / 2.0) < 1e-12);
    CHECK(cdist(coeffs[1], (a - c) / 2.0) < 1e-12);
}

TEST_CASE("fourier inversion recovers random functions") {
    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    struct Case {
        GroupSpec spec;
        std::uint32_t s, n;
    };
    const std::vector<Case> cases = {{GroupSpec({2}), 1, 2},
                                     {GroupSpec({3}), 1, 2},
                                     {GroupSpec({2, 3}), 1, 1},
                                     {GroupSpec({2}), 2, 2},
                                     {GroupSpec({5}), 1, 2}};
    for (const auto& c : cases) {
        MatrixSpace space(c.spec, c.s, c.n, 1 << 20);
        std::vector<std::complex<double>> values(space.size());
        for (auto& v : values) v = {unif(rng), unif(rng)};
        auto back = inverse_dft(space, dft(space, values));
        for (std::size_t g = 0; g < values.size(); ++g) {
            CHECK(cdist(values[g], back[g]) < 1e-10);
        }
    }
}

TEST_CASE("orthogonality of characters over subgroup duals") {
    std::mt19937_64 rng(3);
    for (const auto& spec : testutil::sweep_specs()) {
        const std::uint32_t s = 1 + rng() % 2;
        const std::uint32_t n = 1 + rng() % 2;
        auto p = testutil::random_subgroup(rng, spec, s, n, 2);
        auto dual_list = dual(p);
        MatrixSpace space(spec, s, n, 1 << 20);
        for (std::uint64_t gc = 0; gc < space.size(); ++gc) {
            const DigitMatrix g = space.matrix(gc);
            std::complex<double> sum = 0.0;
            for (std::size_t i = 0; i < dual_list.size(); ++i) {
                sum += matrix_pair(dual_list.at(i), g);
            }
            // membership by scanning the element list (oracle-grade)
            bool member = false;
            for (std::size_t i = 0; i < p.elements().size() && !member; ++i) {
                member = std::equal(p.elements().view(i).begin(), p.elements().view(i).end(),
                                    g.codes().begin());
            }
            if (member) {
                CHECK(cdist(sum, {double(dual_list.size()), 0.0}) < 1e-9);
            } else {
                CHECK(std::abs(sum) < 1e-9);
            }
        }
    }
}

TEST_CASE("poisson summation closed cases") {
    // P = {0} inside Z_2: both sides equal f(0).
    MatrixSpace space(GroupSpec({2}), 1, 1, 1 << 20);
    std::vector<std::complex<double>> values{{0.25, 0.5}, {-2.0, 1.0}};
    auto trivial = trivial_group(GroupSpec({2}), 1, 1);
    auto chk = poisson_sum_check(space, values, trivial);
    CHECK(cdist(chk.lhs, values[0]) < 1e-12);
    CHECK(cdist(chk.rhs, values[0]) < 1e-12);

    // P = whole group: both sides equal the mean.
    auto whole = whole_group(GroupSpec({2}), 1, 1);
    auto chk2 = poisson_sum_check(space, values, whole);
    CHECK(cdist(chk2.lhs, (values[0] + values[1]) / 2.0) < 1e-12);
    CHECK(cdist(chk2.lhs, chk2.rhs) < 1e-12);
}

TEST_CASE("poisson summation on random subgroups") {
    std::mt19937_64 rng(4);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    GroupSpec z3({3});
    for (int rep = 0; rep < 10; ++rep) {
        MatrixSpace space(z3, 1, 2, 1 << 20);
        std::vector<std::complex<double>> values(space.size());
        for (auto& v : values) v = {unif(rng), unif(rng)};
        auto p = testutil::random_subgroup(rng, z3, 1, 2, 1 + rng() % 2);
        auto chk = poisson_sum_check(space, values, p);
        CHECK(cdist(chk.lhs, chk.rhs) < 1e-12);
    }
}

TEST_CASE("matrix space codes round-trip") {
    MatrixSpace space(GroupSpec({2, 3}), 2, 2, 1 << 20);
    for (std::uint64_t code = 0; code < space.size(); ++code) {
        CHECK(space.code(space.matrix(code)) == code);
    }
}

TEST_CASE("single coefficients match the definition") {
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unif(-1.0, 1.0);
    MatrixSpace space(GroupSpec({2, 3}), 1, 2, 1 << 20);
    std::vector<std::complex<double>> values(space.size());
    for (auto& v : values) v = {unif(rng), unif(rng)};
    for (std::uint64_t hc = 0; hc < space.size(); hc += 7) {
        const DigitMatrix h = space.matrix(hc);
        std::complex<double> direct = 0.0;
        for (std::uint64_t gc = 0; gc < space.size(); ++gc) {
            direct += values[gc] * matrix_pair(h, space.matrix(gc));
        }
        direct /= double(space.size());
        CHECK(cdist(dft_at(space, values, h), direct) < 1e-12);
    }
}

TEST_CASE("dft capacity guard") {
    CHECK_THROWS_AS(MatrixSpace(GroupSpec({2}), 5, 6, 1 << 24), capacity_error);
}

TEST_SUITE_END();
