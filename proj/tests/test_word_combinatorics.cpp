#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "doctest.h"
#include "hc/word_combinatorics.hpp"

using namespace hc;
using namespace hc::words;

TEST_CASE("word construction and jumpiness") {
    CHECK(is_jumpy(parse_word("0101", 2)));
    CHECK_FALSE(is_jumpy(parse_word("0011", 2)));
    CHECK(is_jumpy(parse_word("2", 3)));  // vacuous
    CHECK_THROWS_AS(parse_word("012", 2), InvalidData);  // letter 2 out of range
    CHECK_THROWS_AS(parse_word("", 2), InvalidData);
    CHECK_THROWS_AS(make_word({0, -1}, 2), InvalidData);
    CHECK_THROWS_AS(make_word({0, 1}, 1), InvalidData);
}

TEST_CASE("basin detection follows the strict-domination definition") {
    auto b = find_basin(parse_word("0101", 2));
    REQUIRE(b.has_value());
    CHECK_EQ(b->i, 3);
    CHECK_EQ(b->j, 3);
    CHECK_EQ(b->k, 1);

    CHECK_FALSE(has_basin(parse_word("012", 3)));   // strictly increasing
    // The letter 2 pokes above the matching flanks k=1, so "1021" has no basin:
    // every inner letter must sit strictly below both flanks.
    CHECK_FALSE(has_basin(parse_word("1021", 3)));

    auto c = find_basin(parse_word("2012", 3));     // multi-letter basin "01"
    REQUIRE(c.has_value());
    CHECK_EQ(c->i, 2);
    CHECK_EQ(c->j, 3);
    CHECK_EQ(c->k, 2);

    auto d = find_basin(parse_word("13231", 4));    // leftmost flank is not l_1
    REQUIRE(d.has_value());
    CHECK_EQ(d->i, 3);
    CHECK_EQ(d->j, 3);
    CHECK_EQ(d->k, 3);

    auto e = find_basin(parse_word("31013", 4));    // leftmost start wins
    REQUIRE(e.has_value());
    CHECK_EQ(e->i, 2);
    CHECK_EQ(e->j, 4);
    CHECK_EQ(e->k, 3);

    CHECK_FALSE(has_basin(parse_word("01", 2)));
    CHECK_FALSE(has_basin(parse_word("0", 2)));
}

TEST_CASE("disjoint basin count: frozen values and the floor(m/2^n) guarantee") {
    CHECK_EQ(count_disjoint_basins(parse_word("01010101", 2)), 3);  // >= floor(8/4) = 2
    CHECK_EQ(count_disjoint_basins(parse_word("0101", 2)), 1);
    CHECK_EQ(count_disjoint_basins(parse_word("01", 2)), 0);
    CHECK_EQ(count_disjoint_basins(parse_word("1021", 3)), 0);

    for (int n : {2, 3, 4})
        for (int len : {8, 23, 64, 96})
            for (std::uint64_t s = 0; s < 25; ++s) {
                Word w = random_jumpy_word(n, len, s * 977 + n * 131 + len);
                INFO("n=" << n << " len=" << len << " seed-index=" << s);
                CHECK_GE(count_disjoint_basins(w), len >> n);
            }
}

TEST_CASE("forced-basin count c_m") {
    CHECK_EQ(c_m(5, 2), 1);
    CHECK_EQ(c_m(9, 2), 2);
    CHECK_EQ(c_m(1, 2), 1);
    CHECK_EQ(c_m(1, 17), 1);
    CHECK_EQ(c_m(1024, 2), 256);
    CHECK_EQ(c_m((1LL << 62), 63), 1);  // 2^n beyond any representable length
    CHECK_THROWS_AS(c_m(0, 2), InvalidData);
    CHECK_THROWS_AS(c_m(4, 1), InvalidData);
}

TEST_CASE("rank decode and random draw produce exactly the jumpy words") {
    CHECK_EQ(jumpy_word_from_rank(0, 2, 4).letters, std::vector<int>({0, 1, 0, 1}));
    CHECK_EQ(jumpy_word_from_rank(1, 2, 4).letters, std::vector<int>({1, 0, 1, 0}));

    std::set<std::vector<int>> seen;
    for (long long r = 0; r < 3 * 128; ++r) {  // all jumpy words of length 8 over {0,1,2}
        Word w = jumpy_word_from_rank(r, 3, 8);
        CHECK(is_jumpy(w));
        seen.insert(w.letters);
    }
    CHECK_EQ(seen.size(), 3 * 128);

    Word a = random_jumpy_word(4, 16, 42), b = random_jumpy_word(4, 16, 42);
    CHECK_EQ(a.letters, b.letters);
    CHECK(is_jumpy(a));
    CHECK_NE(random_jumpy_word(4, 16, 43).letters, a.letters);
}

TEST_CASE("word lemma audits") {
    SUBCASE("exhaustive n=2 and n=3 are clean") {
        auto r2 = verify_word_lemma(2, LemmaMode::Exhaustive);
        CHECK_EQ(r2.checked, 2);
        CHECK_EQ(r2.word_length, 4);
        CHECK(r2.counterexamples.empty());
        auto r3 = verify_word_lemma(3, LemmaMode::Exhaustive);
        CHECK_EQ(r3.checked, 384);  // 3 * 2^7
        CHECK(r3.counterexamples.empty());
    }
    SUBCASE("n=4 exhaustive exceeds the default budget") {
        CHECK_THROWS_AS(verify_word_lemma(4, LemmaMode::Exhaustive), BudgetExceeded);
    }
    SUBCASE("randomized n=4 audit is clean and seed-reproducible") {
        auto r = verify_word_lemma(4, LemmaMode::Randomized, 200000, 99);
        CHECK_EQ(r.checked, 200000);
        CHECK_EQ(r.seed, 99);
        CHECK_EQ(r.word_length, 16);
        CHECK(r.counterexamples.empty());
    }
    SUBCASE("parallel and serial scans return identical reports") {
        LemmaOptions par, ser;
        ser.parallel = false;
        auto a = verify_word_lemma(3, LemmaMode::Exhaustive, 0, 0, par);
        auto b = verify_word_lemma(3, LemmaMode::Exhaustive, 0, 0, ser);
        CHECK_EQ(a.checked, b.checked);
        CHECK_EQ(a.counterexamples.size(), b.counterexamples.size());
        auto c = verify_word_lemma(4, LemmaMode::Randomized, 50000, 7, par);
        auto d = verify_word_lemma(4, LemmaMode::Randomized, 50000, 7, ser);
        CHECK_EQ(c.checked, d.checked);
        CHECK_EQ(c.counterexamples.size(), d.counterexamples.size());
    }
    SUBCASE("argument validation") {
        CHECK_THROWS_AS(verify_word_lemma(1, LemmaMode::Exhaustive), InvalidData);
        CHECK_THROWS_AS(verify_word_lemma(3, LemmaMode::Randomized, 0, 0), InvalidData);
        CHECK_THROWS_AS(verify_word_lemma(25, LemmaMode::Exhaustive), InvalidData);
    }
}

TEST_CASE("type-II index lower bound") {
    Word w = parse_word("0101", 2);
    // N2 * C_4 * T - 4 * len * n = 10 * 1 * 100 - 32
    CHECK_EQ(type2_lower_bound(w, 2, 0.0, 10.0, 100.0, {0.0, 0.0, 0.0}), doctest::Approx(968.0));
    // per-segment rates enter linearly
    CHECK_EQ(type2_lower_bound(w, 2, 2.0, 10.0, 100.0, {1.0, 2.0, 3.0}),
             doctest::Approx(968.0 + 2.0 * 6.0));
    // monotone in T
    CHECK_GT(type2_lower_bound(w, 2, 0.0, 10.0, 200.0, {0.0, 0.0, 0.0}),
             type2_lower_bound(w, 2, 0.0, 10.0, 100.0, {0.0, 0.0, 0.0}));

    CHECK_THROWS_AS(type2_lower_bound(w, 2, 0.0, 1.0, 1.0, {0.0}), LengthMismatch);
    CHECK_THROWS_AS(type2_lower_bound(parse_word("0011", 2), 2, 0.0, 1.0, 1.0,
                                      {0.0, 0.0, 0.0}),
                    InvalidData);
}
