#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <map>

#include "ramlab/primitivity.hpp"

using namespace ramlab;

namespace {

int count_proper_divisors(int p) {
    int c = 0;
    for (int q = 1; q < p; ++q)
        if (p % q == 0) ++c;
    return c;
}

// visits of each edge of gN by the path of w from the basepoint
std::map<int, int> edge_visits(const ReducedWord& w, const CoreGraph& gN) {
    std::map<int, int> visits;
    int v = gN.basepoint;
    for (const Letter& l : w.letters) {
        const int e = (l.sign > 0) ? gN.out_edge(v, l.index) : gN.in_edge(v, l.index);
        REQUIRE(e >= 0);
        ++visits[e];
        v = (l.sign > 0) ? gN.edges[e].terminus : gN.edges[e].origin;
    }
    REQUIRE(v == gN.basepoint);
    return visits;
}

}  // namespace

TEST_CASE("primitivity rank oracles") {
    const PrimitivityReport empty = primitivity_rank("");
    CHECK(empty.pi == 0);
    // the sole critical subgroup of the identity is the trivial subgroup
    REQUIRE(empty.crit.size() == 1);
    CHECK(empty.crit[0].num_vertices == 1);
    CHECK(empty.crit[0].edges.empty());
    CHECK(empty.crit[0].rank() == 0);

    CHECK_FALSE(primitivity_rank("a").is_finite());      // primitive
    CHECK_FALSE(primitivity_rank("ab").is_finite());     // part of the standard basis
    CHECK_FALSE(primitivity_rank("aba").is_finite());    // primitive, graph has 3 vertices
    CHECK_FALSE(primitivity_rank("abb").is_finite());    // free factor of F2
    CHECK(primitivity_rank("a", 2).pi == std::nullopt);  // ambient alphabet does not matter

    const PrimitivityReport sq = primitivity_rank("aa");
    CHECK(sq.pi == 1);
    REQUIRE(sq.crit.size() == 1);
    CHECK(sq.crit[0] == bouquet(1));  // the sole critical subgroup is <a>

    const PrimitivityReport comm = primitivity_rank("abAB");
    CHECK(comm.pi == 2);
    REQUIRE(comm.crit.size() == 1);
    CHECK(comm.crit[0] == bouquet(2));

    const PrimitivityReport sqs = primitivity_rank("aabb");
    CHECK(sqs.pi == 2);
    REQUIRE(sqs.crit.size() == 1);
    CHECK(sqs.crit[0] == bouquet(2));

    const PrimitivityReport sqs3 = primitivity_rank("aabbcc");
    CHECK(sqs3.pi == 3);
    REQUIRE(sqs3.crit.size() == 1);
    CHECK(sqs3.crit[0] == bouquet(3));
}

TEST_CASE("critical subgroups of powers count proper divisors") {
    for (int p = 2; p <= 8; ++p) {
        const PrimitivityReport r = primitivity_rank(std::string(p, 'a'));
        CHECK(r.pi == 1);
        CHECK(static_cast<int>(r.crit.size()) == count_proper_divisors(p));
        for (const CoreGraph& n : r.crit) CHECK(n.rank() == 1);
    }
}

TEST_CASE("quotient structure behind pi(aabb)") {
    // the poset of quotients of <aabb>'s graph: the word itself, four rank-2
    // free factors at norm 1, a rank-3 quotient at norm 2, and the bouquet
    const CoreGraph h = from_words(2, std::vector<std::string>{"aabb"});
    const auto nodes = enumerate_quotients(h);
    REQUIRE(nodes.size() == 7);
    CHECK(nodes[0].graph == h);

    std::map<int, int> by_norm;
    for (const auto& qi : nodes) ++by_norm[qi.min_norm];
    CHECK(by_norm[0] == 1);
    CHECK(by_norm[1] == 4);
    CHECK(by_norm[2] == 2);

    // norm-1 nodes are exactly the rank-2 free factors of the interval
    int free_factors = 0, nonfree = 0;
    for (const auto& qi : nodes) {
        if (qi.min_norm == 0) continue;
        if (qi.min_norm == qi.graph.rank() - h.rank())
            ++free_factors;
        else
            ++nonfree;
    }
    CHECK(free_factors == 5);  // four at norm 1, the rank-3 one at norm 2
    CHECK(nonfree == 1);       // the bouquet: norm 2 < its rank 2... witness of pi = 2

    // the four norm-1 quotients, by subgroup
    const std::vector<std::vector<std::string>> expected_rank2 = {
        {"a", "bb"}, {"aa", "b"}, {"aa", "bb"}, {"aabA", "ab"}};
    for (const auto& gens : expected_rank2) {
        const std::string key = from_words(2, gens).canonical_key();
        bool found = false;
        for (const auto& qi : nodes)
            if (qi.min_norm == 1 && qi.graph.canonical_key() == key) found = true;
        CHECK_MESSAGE(found, "missing quotient <" << gens[0] << "," << gens[1] << ">");
    }
}

TEST_CASE("per-subgroup primitivity") {
    const CoreGraph f2 = bouquet(2);
    CHECK(is_primitive(parse_reduced("a", 2), f2));
    CHECK(is_primitive(parse_reduced("ab"), f2));
    CHECK(is_primitive(parse_reduced("abb"), f2));
    CHECK_FALSE(is_primitive(parse_reduced("aa", 2), f2));
    CHECK_FALSE(is_primitive(parse_reduced("abAB"), f2));
    CHECK_FALSE(is_primitive(parse_reduced(""), f2));  // identity is never primitive

    const CoreGraph sq = from_words(1, std::vector<std::string>{"aa"});
    CHECK(is_primitive(parse_reduced("aa"), sq));  // generates the rank-1 subgroup
    CHECK_FALSE(is_primitive(parse_reduced("aaaa"), sq));
    CHECK_THROWS_AS(is_primitive(parse_reduced("a"), sq), std::invalid_argument);  // not a member
}

TEST_CASE("algebraic extensions") {
    const CoreGraph f2 = bouquet(2);
    const CoreGraph sq = from_words(1, std::vector<std::string>{"aa"});

    CHECK(is_algebraic_extension(sq, bouquet(1)));  // proper powers are algebraic
    CHECK(is_algebraic_extension(f2, f2));          // reflexive
    CHECK(is_algebraic_extension(from_words(2, std::vector<std::string>{"aabb"}), f2));
    CHECK(is_algebraic_extension(from_words(2, std::vector<std::string>{"abAAA", "aabAA"}), f2));

    // free factors are not algebraic
    CHECK_FALSE(is_algebraic_extension(from_words(2, std::vector<std::string>{"a"}), f2));
    CHECK_FALSE(is_algebraic_extension(from_words(2, std::vector<std::string>{"abb"}), f2));

    // aabb sits inside <a, b^2> as u^2 v in that basis, which is primitive
    CHECK_FALSE(is_algebraic_extension(from_words(2, std::vector<std::string>{"aabb"}),
                                       from_words(2, std::vector<std::string>{"a", "bb"})));

    CHECK_THROWS_AS(is_algebraic_extension(bouquet(1), sq), std::invalid_argument);
}

TEST_CASE("critical subgroups absorb each edge at least twice") {
    // words with finite pi >= 1: the word's path in each critical graph
    // traverses every edge at least twice
    for (int t = 2; t <= 5; ++t) {
        for (const RawWord& raw : enumerate_words(2, t, WordMode::Reduced)) {
            const ReducedWord w = reduce(raw);
            const PrimitivityReport r = primitivity_rank(w);
            if (!r.is_finite() || *r.pi == 0) continue;
            for (const CoreGraph& n : r.crit) {
                for (const auto& [edge, visits] : edge_visits(w, n)) CHECK(visits >= 2);
                // and the path misses no edge
                CHECK(edge_visits(w, n).size() == n.edges.size());
            }
        }
    }
}
