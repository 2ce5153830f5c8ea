#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <set>

#include "ramlab/free_words.hpp"

using namespace ramlab;

namespace {

Permutation cycle3() { return Permutation{{1, 2, 0}}; }  // (1 2 3) in one-line form

}  // namespace

TEST_CASE("reduction oracles") {
    CHECK(reduce(parse_word("aA")).empty());
    CHECK(reduce(parse_word("abBa")) == parse_reduced("aa", 2));
    CHECK(word_to_string(parse_reduced("abBa")) == "aa");
    CHECK(parse_reduced("").empty());
}

TEST_CASE("reduction is idempotent and parity-preserving on random raw words") {
    Rng rng(12345);
    for (int trial = 0; trial < 1000; ++trial) {
        const int k = 1 + static_cast<int>(uniform_below(rng, 3));
        const int t = static_cast<int>(uniform_below(rng, 12));
        RawWord w;
        w.alphabet_size = k;
        for (int i = 0; i < t; ++i)
            w.letters.push_back(Letter{1 + static_cast<int>(uniform_below(rng, k)),
                                       uniform_below(rng, 2) ? +1 : -1});
        const ReducedWord r = reduce(w);
        CHECK(reduce(as_raw(r)) == r);
        CHECK((t - r.length()) % 2 == 0);
        for (int i = 0; i + 1 < r.length(); ++i) {
            const bool cancelling = r.letters[i].index == r.letters[i + 1].index &&
                                    r.letters[i].sign == -r.letters[i + 1].sign;
            CHECK_FALSE(cancelling);
        }
    }
}

TEST_CASE("word evaluation composes left to right") {
    const Permutation s1 = cycle3();
    const Permutation id3 = Permutation::identity(3);

    CHECK(evaluate_word(parse_word("a"), {s1}) == s1);
    CHECK(evaluate_word(parse_word("aA"), {s1}) == id3);
    CHECK(evaluate_word(parse_word("ab"), {s1, id3}) == s1);

    // first letter acts first: (ab)(p) = s2(s1(p))
    const Permutation s2{{0, 2, 1}};
    const Permutation ab = evaluate_word(parse_word("ab"), {s1, s2});
    for (int p = 0; p < 3; ++p) CHECK(ab(p) == s2(s1(p)));

    // evaluation is invariant under free reduction
    Rng rng(99);
    for (int trial = 0; trial < 50; ++trial) {
        RawWord w;
        w.alphabet_size = 2;
        for (int i = 0; i < 8; ++i)
            w.letters.push_back(Letter{1 + static_cast<int>(uniform_below(rng, 2)),
                                       uniform_below(rng, 2) ? +1 : -1});
        const std::vector<Permutation> sig{random_permutation(6, rng), random_permutation(6, rng)};
        CHECK(evaluate_word(w, sig) == evaluate_word(as_raw(reduce(w)), sig));
    }
}

TEST_CASE("word evaluation rejects mismatched inputs") {
    CHECK_THROWS_AS(evaluate_word(parse_word("ab"), {cycle3()}), std::invalid_argument);
    CHECK_THROWS_AS(evaluate_word(parse_word("ab"), {cycle3(), Permutation::identity(4)}),
                    std::invalid_argument);
}

TEST_CASE("fixed point counting") {
    CHECK(fixed_points(Permutation::identity(5)) == 5);
    CHECK(fixed_points(cycle3()) == 0);
    CHECK(fixed_points(Permutation{{1, 0, 2, 3}}) == 2);
}

TEST_CASE("enumeration counts and order") {
    CHECK(enumerate_words(2, 1, WordMode::Raw).size() == 4);
    CHECK(enumerate_words(2, 3, WordMode::Raw).size() == 64);
    CHECK(enumerate_words(2, 0, WordMode::Raw).size() == 1);

    const auto reduced = enumerate_words(2, 2, WordMode::Reduced);
    CHECK(reduced.size() == 12);
    std::set<std::string> distinct;
    for (const RawWord& w : reduced) {
        CHECK(reduce(w).length() == 2);  // already reduced
        distinct.insert(word_to_string(w));
    }
    CHECK(distinct.size() == 12);

    // documented lexicographic order: a < A < b < B
    const auto raw = enumerate_words(2, 2, WordMode::Raw);
    CHECK(word_to_string(raw[0]) == "aa");
    CHECK(word_to_string(raw[1]) == "aA");
    CHECK(word_to_string(raw[4]) == "Aa");
    CHECK(word_to_string(raw.back()) == "BB");
    CHECK(word_to_string(reduced[0]) == "aa");
    CHECK(word_to_string(reduced[1]) == "ab");  // aA skipped
}

TEST_CASE("enumeration guard") {
    CHECK_THROWS_AS(enumerate_words(13, 13, WordMode::Raw), GuardError);
}

TEST_CASE("word text parsing") {
    const RawWord w = parse_word("aBc");
    CHECK(w.alphabet_size == 3);
    CHECK(w.letters[1].index == 2);
    CHECK(w.letters[1].sign == -1);
    CHECK(parse_word("a", 5).alphabet_size == 5);
    CHECK_THROWS_AS(parse_word("a1"), std::invalid_argument);
    CHECK_THROWS_AS(parse_word("abc", 2), std::invalid_argument);
}

TEST_CASE("random permutations are uniform enough for fixed-point means") {
    // E[fix(sigma)] = 1 for a uniform permutation; also F_{x1,n} has mean 1.
    Rng rng(2024);
    double total = 0;
    const int trials = 20000;
    for (int i = 0; i < trials; ++i) total += fixed_points(random_permutation(10, rng));
    const double mean = total / trials;
    CHECK(mean == doctest::Approx(1.0).epsilon(0.05));
}

TEST_CASE("derived seeds decorrelate trials") {
    CHECK(derive_seed(7, 0) != derive_seed(7, 1));
    CHECK(derive_seed(7, 0) != derive_seed(8, 0));
    Rng a(derive_seed(7, 0)), b(derive_seed(7, 0));
    CHECK(random_permutation(20, a) == random_permutation(20, b));
}
