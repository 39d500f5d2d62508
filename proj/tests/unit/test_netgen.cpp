#include <doctest.h>

#include <sstream>

#include "helpers.hpp"

using namespace wafomlab;
using testutil::cyclic;
using testutil::matrix_from;

TEST_SUITE_BEGIN("netgen");

TEST_CASE("span of the zero generator is trivial") {
    GroupSpec z2({2});
    GeneratorSet gens{z2, 1, 2, {DigitMatrix(z2, 1, 2)}};
    auto p = span(gens);
    CHECK(p.order() == 1);
    CHECK(p.elements().at(0).is_zero());
}

TEST_CASE("span of a single order-2 element") {
    GroupSpec z2({2});
    GeneratorSet gens{z2, 1, 2, {matrix_from(z2, 1, 2, {1, 1})}};
    auto p = span(gens);
    CHECK(p.order() == 2);
    auto sorted = testutil::sorted_elements(p.elements());
    CHECK(sorted == std::vector<std::vector<std::uint32_t>>{{0, 0}, {1, 1}});
}

TEST_CASE("span inside Z_4 respects element order") {
    GroupSpec z4({4});
    GeneratorSet gens{z4, 1, 1, {matrix_from(z4, 1, 1, {2})}};
    auto p = span(gens);
    CHECK(p.order() == 2);
    auto sorted = testutil::sorted_elements(p.elements());
    CHECK(sorted == std::vector<std::vector<std::uint32_t>>{{0}, {2}});
}

TEST_CASE("span is idempotent") {
    std::mt19937_64 rng(11);
    for (const auto& spec : testutil::sweep_specs()) {
        auto p = testutil::random_subgroup(rng, spec, 2, 2, 2);
        GeneratorSet all{spec, 2, 2, {}};
        for (std::size_t i = 0; i < p.elements().size(); ++i) {
            all.generators.push_back(p.elements().at(i));
        }
        auto q = span(all);
        CHECK(testutil::same_element_set(p.elements(), q.elements()));
    }
}

TEST_CASE("spans are closed under addition and negation") {
    std::mt19937_64 rng(14);
    for (const auto& spec : testutil::sweep_specs()) {
        auto p = testutil::random_subgroup(rng, spec, 2, 2, 2);
        const auto& elems = p.elements();
        auto contains = [&](const DigitMatrix& m) {
            for (std::size_t i = 0; i < elems.size(); ++i) {
                if (std::equal(elems.view(i).begin(), elems.view(i).end(), m.codes().begin())) {
                    return true;
                }
            }
            return false;
        };
        CHECK(elems.at(0).is_zero());
        for (int rep = 0; rep < 20; ++rep) {
            const auto a = elems.at(rng() % elems.size());
            const auto b = elems.at(rng() % elems.size());
            CHECK(contains(a + b));
            CHECK(contains(a.negated()));
        }
    }
}

TEST_CASE("span matches the coefficient-combination oracle on cyclic groups") {
    // For cyclic G the subgroup generated by B_1..B_d equals the set of all
    // combinations g_1 B_1 + ... + g_d B_d; enumerate them all and compare.
    std::mt19937_64 rng(15);
    for (std::uint32_t b : {2u, 3u, 4u, 6u}) {
        GroupSpec spec({b});
        const std::uint32_t d = 2;
        auto gens = random_generator_set(rng, spec, 2, 2, d);
        auto p = span(gens);

        MatrixList combos(spec, 2, 2);
        for (std::uint32_t g1 = 0; g1 < b; ++g1) {
            for (std::uint32_t g2 = 0; g2 < b; ++g2) {
                combos.push_back(gens.generators[0].scaled(g1) + gens.generators[1].scaled(g2));
            }
        }
        auto expected = testutil::sorted_elements(combos);
        expected.erase(std::unique(expected.begin(), expected.end()), expected.end());
        CHECK(testutil::sorted_elements(p.elements()) == expected);
    }
}

TEST_CASE("span capacity cap") {
    GroupSpec z2({2});
    GeneratorSet gens{z2, 2, 4, {}};
    std::mt19937_64 rng(5);
    gens = random_generator_set(rng, z2, 2, 4, 8);
    CHECK_THROWS_AS(span(gens, 16), capacity_error);
}

TEST_CASE("digital net with zero matrices is trivial") {
    GeneratingMatrices gm{2, 1, 2, 2, {std::vector<std::uint32_t>(4, 0)}};
    auto p = digital_net(gm);
    CHECK(p.order() == 1);
    CHECK(p.free_basis().has_value());
    CHECK_FALSE(*p.free_basis());
}

TEST_CASE("identity generating matrix yields the full space") {
    // C_1 = 2x2 identity over Z_2, s = 1, n = 2, d = 2.
    GeneratingMatrices gm{2, 1, 2, 2, {{1, 0, 0, 1}}};
    auto p = digital_net(gm);
    CHECK(p.order() == 4);
    REQUIRE(p.free_basis().has_value());
    CHECK(*p.free_basis());
    // X_1 = (1 0), X_2 = (0 1) by the row/column rule.
    CHECK(p.generators()[0] == matrix_from(cyclic(2), 1, 2, {1, 0}));
    CHECK(p.generators()[1] == matrix_from(cyclic(2), 1, 2, {0, 1}));
}

TEST_CASE("two-coordinate digital net matches hand enumeration") {
    // C_1 = identity, C_2 = [[0,1],[1,0]], b = 2, s = n = d = 2.
    GeneratingMatrices gm{2, 2, 2, 2, {{1, 0, 0, 1}, {0, 1, 1, 0}}};
    auto p = digital_net(gm);

    // Oracle: build X_1, X_2 from the definition and enumerate all 4 digit
    // combinations explicitly.
    GroupSpec z2({2});
    DigitMatrix x1(z2, 2, 2), x2(z2, 2, 2);
    for (std::uint32_t j = 0; j < 2; ++j) {
        for (std::uint32_t l = 0; l < 2; ++l) {
            x1.set_entry_code(j, l, gm.matrices[j][l * 2 + 0]);
            x2.set_entry_code(j, l, gm.matrices[j][l * 2 + 1]);
        }
    }
    MatrixList expected(z2, 2, 2);
    for (std::uint32_t k0 = 0; k0 < 2; ++k0) {
        for (std::uint32_t k1 = 0; k1 < 2; ++k1) {
            expected.push_back(x1.scaled(k0) + x2.scaled(k1));
        }
    }
    auto dedup = testutil::sorted_elements(expected);
    dedup.erase(std::unique(dedup.begin(), dedup.end()), dedup.end());
    CHECK(p.order() == dedup.size());
    CHECK(testutil::sorted_elements(p.elements()) == dedup);
    CHECK(p.order() == 4);
}

TEST_CASE("non-free generating matrices are flagged, not rejected") {
    // Both columns of C_1 equal: X_1 == X_2, so |P| = 2 < b^d.
    GeneratingMatrices gm{2, 1, 2, 2, {{1, 1, 0, 0}}};
    auto p = digital_net(gm);
    CHECK(p.order() == 2);
    REQUIRE(p.free_basis().has_value());
    CHECK_FALSE(*p.free_basis());
}

TEST_CASE("dual closed cases") {
    GroupSpec z2({2});
    auto trivial = trivial_group(z2, 1, 2);
    CHECK(dual(trivial).size() == 4);

    auto whole = whole_group(z2, 1, 2);
    auto dual_whole = dual(whole);
    CHECK(dual_whole.size() == 1);
    CHECK(dual_whole.at(0).is_zero());

    GeneratorSet gens{z2, 1, 2, {matrix_from(z2, 1, 2, {1, 1})}};
    auto p = span(gens);
    auto d = dual(p);
    CHECK(testutil::sorted_elements(d) ==
          std::vector<std::vector<std::uint32_t>>{{0, 0}, {1, 1}});
}

TEST_CASE("dual size identity and double dual") {
    std::mt19937_64 rng(12);
    for (const auto& spec : testutil::sweep_specs()) {
        const std::uint32_t s = 1 + rng() % 2;
        const std::uint32_t n = 1 + rng() % 2;
        const std::uint32_t d = 1 + rng() % 3;
        auto p = testutil::random_subgroup(rng, spec, s, n, d);
        auto dl = dual(p);

        std::uint64_t full = 1;
        for (std::size_t t = 0; t < std::size_t(s) * n; ++t) full *= spec.order();
        CHECK(p.order() * dl.size() == full);

        auto dd = dual(point_group_from_elements(dl));
        CHECK(testutil::same_element_set(dd, p.elements()));
    }
}

TEST_CASE("element lists that are not subgroups are rejected") {
    GroupSpec z2({2});
    MatrixList bad(z2, 1, 2);
    bad.push_back(matrix_from(z2, 1, 2, {0, 0}));
    bad.push_back(matrix_from(z2, 1, 2, {1, 0}));
    bad.push_back(matrix_from(z2, 1, 2, {0, 1})); // closure needs (1,1) too
    CHECK_THROWS_AS(point_group_from_elements(bad), error);
}

TEST_CASE("net file round-trip") {
    std::mt19937_64 rng(13);
    for (const auto& spec : testutil::sweep_specs()) {
        auto gens = random_generator_set(rng, spec, 2, 3, 2);
        const std::string text = net_file_string(gens);
        std::istringstream in(text);
        auto back = parse_net_file(in);
        CHECK(back.group == gens.group);
        CHECK(back.s == gens.s);
        CHECK(back.n == gens.n);
        REQUIRE(back.generators.size() == gens.generators.size());
        for (std::size_t i = 0; i < gens.generators.size(); ++i) {
            CHECK(back.generators[i] == gens.generators[i]);
        }
    }
}

TEST_CASE("net file rejects out-of-range digits with location") {
    std::istringstream in("wafomnet v1 2 1 2 1\n1 2\n");
    try {
        parse_net_file(in);
        FAIL("expected parse error");
    } catch (const parse_error& e) {
        const std::string msg = e.what();
        CHECK(msg.find("row 1") != std::string::npos);
        CHECK(msg.find("column 2") != std::string::npos);
    }
}

TEST_CASE("net file rejects structural problems") {
    std::istringstream empty_gens("wafomnet v1 2 1 2 0\n");
    CHECK_THROWS_AS(parse_net_file(empty_gens), parse_error);

    std::istringstream truncated("wafomnet v1 2 2 2 1\n1 0\n");
    CHECK_THROWS_AS(parse_net_file(truncated), parse_error);

    std::istringstream bad_header("wafomnet v2 2 1 2 1\n1 0\n");
    CHECK_THROWS_AS(parse_net_file(bad_header), parse_error);

    std::istringstream trailing("wafomnet v1 2 1 2 1\n1 0\n0 1\n");
    CHECK_THROWS_AS(parse_net_file(trailing), parse_error);

    std::istringstream wrong_rank("wafomnet v1 2,3 1 2 1\n1 0\n");
    CHECK_THROWS_AS(parse_net_file(wrong_rank), parse_error);
}

TEST_CASE("product-group net files carry residue tuples") {
    GroupSpec prod({2, 3});
    GeneratorSet gens{prod, 1, 2, {matrix_from(prod, 1, 2, {3, 5})}};
    const std::string text = net_file_string(gens);
    CHECK(text.find("1,1") != std::string::npos); // code 3 in Z_2 x Z_3
    std::istringstream in(text);
    auto back = parse_net_file(in);
    CHECK(back.generators[0] == gens.generators[0]);
}

TEST_CASE("generating matrices to generator set round-trip through files") {
    GeneratingMatrices gm{3, 2, 2, 2, {{1, 0, 2, 1}, {0, 1, 1, 0}}};
    auto gens = to_generator_set(gm);
    std::istringstream in(net_file_string(gens));
    auto back = parse_net_file(in);
    auto p1 = digital_net(gm);
    auto p2 = span(back);
    CHECK(testutil::same_element_set(p1.elements(), p2.elements()));
}

TEST_SUITE_END();
