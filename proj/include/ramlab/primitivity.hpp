#pragma once
// Primitivity rank pi(w) of a word in F_k, its set of critical subgroups,
// primitivity of an element inside a given finitely generated subgroup, and
// algebraic extensions. All searches run over the finite poset of quotients
// of the word's core graph, which is exhaustive:
//
//  * every subgroup J containing w as a non-primitive element maps onto a
//    quotient M of the core graph of <w> (the image of <w>'s graph inside
//    J's), and w is non-primitive in M with rank(M) <= rank(J) whenever it
//    is non-primitive in J (free factors descend along M <= J <= ...),
//  * hence the minimum rank witness is always realised by a quotient.

#include <optional>
#include <vector>

#include "ramlab/core_graphs.hpp"
#include "ramlab/free_words.hpp"

namespace ramlab {

// pi: nullopt encodes infinity (w primitive or trivial ambient search empty);
// pi == 0 exactly for the empty word, whose sole critical subgroup is the
// trivial one. crit lists the critical subgroups -- the subgroups of minimal
// rank in which w is non-primitive -- as canonical core graphs, ordered by
// canonical key. crit is empty iff pi is infinity.
struct PrimitivityReport {
    std::optional<int> pi;
    std::vector<CoreGraph> crit;

    bool is_finite() const { return pi.has_value(); }
};

// True iff w (a member of the subgroup of gJ) is part of some free basis of
// that subgroup. Decided via M = the image of <w>'s core graph inside gJ:
// w is primitive in J iff <w> is a free factor of M. The empty word is not
// primitive in any subgroup; a word of a rank-1 subgroup is primitive iff it
// generates it.
bool is_primitive(const ReducedWord& w, const CoreGraph& gJ,
                  int vertex_guard = kDefaultPartitionVertexGuard);

// pi(w) and Crit(w) by scanning the quotient poset of <w>'s core graph.
// pi(empty) = 0 with crit = {trivial graph}; pi = infinity iff w is
// primitive in F_k.
PrimitivityReport primitivity_rank(const ReducedWord& w,
                                   int vertex_guard = kDefaultPartitionVertexGuard);
PrimitivityReport primitivity_rank(const std::string& word_text, int k = 0,
                                   int vertex_guard = kDefaultPartitionVertexGuard);

// H <= J is algebraic iff H is not contained in any proper free factor of J.
// Search: quotients M of gH strictly below gJ (admitting a morphism M -> gJ)
// with M a free factor of J; any intermediate witness L gives such an M (the
// image of gH in gL), so quotients suffice. Requires a morphism gH -> gJ.
bool is_algebraic_extension(const CoreGraph& gH, const CoreGraph& gJ,
                            int vertex_guard = kDefaultPartitionVertexGuard);

}  // namespace ramlab
