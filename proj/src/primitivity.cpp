#include "ramlab/primitivity.hpp"

#include <algorithm>

namespace ramlab {

bool is_primitive(const ReducedWord& w, const CoreGraph& gJ, int vertex_guard) {
    if (w.empty()) return false;  // the identity is not part of any basis
    const CoreGraph gH = from_words(gJ.k, std::vector<ReducedWord>{w});
    if (!membership(w, gJ))
        throw std::invalid_argument("is_primitive: word is not a member of the subgroup");
    // <w> is a free factor of J iff it is one of the intermediate subgroup
    // generated by the image of its graph; is_free_factor handles that
    // reduction internally.
    return is_free_factor(gH, gJ, vertex_guard);
}

PrimitivityReport primitivity_rank(const ReducedWord& w, int vertex_guard) {
    PrimitivityReport report;
    if (w.empty()) {
        // The identity lies in the trivial subgroup and is non-primitive
        // there (it belongs to no basis), so rank 0 is attained exactly once.
        report.pi = 0;
        report.crit = {from_words(w.alphabet_size, std::vector<ReducedWord>{})};
        return report;
    }
    // Every subgroup in which w fails to be primitive compresses onto a
    // quotient of <w>'s graph of no larger rank in which it also fails, so
    // scanning the quotient poset finds the minimum rank and all argmins.
    const CoreGraph gH = from_words(w.alphabet_size, std::vector<ReducedWord>{w});
    int best = -1;
    std::vector<CoreGraph> crit;
    for (const QuotientInfo& qi : enumerate_quotients(gH, vertex_guard)) {
        const bool witness = qi.min_norm != qi.graph.rank() - gH.rank();
        if (!witness) continue;
        const int r = qi.graph.rank();
        if (best < 0 || r < best) {
            best = r;
            crit.clear();
        }
        if (r == best) crit.push_back(qi.graph);
    }
    if (best < 0) return report;  // primitive: pi = infinity
    std::sort(crit.begin(), crit.end(), [](const CoreGraph& a, const CoreGraph& b) {
        return a.canonical_key() < b.canonical_key();
    });
    report.pi = best;
    report.crit = std::move(crit);
    return report;
}

PrimitivityReport primitivity_rank(const std::string& word_text, int k, int vertex_guard) {
    return primitivity_rank(parse_reduced(word_text, k), vertex_guard);
}

bool is_algebraic_extension(const CoreGraph& gH, const CoreGraph& gJ, int vertex_guard) {
    const auto eta = morphism(gH, gJ);
    if (!eta) throw std::invalid_argument("is_algebraic_extension: subgroups are not nested");
    const std::string top = gJ.canonical_key();
    if (gH.canonical_key() == top) return true;
    // A proper free factor of J containing H would compress down to one that
    // is a quotient of H's graph, so those are the only candidates.
    for (const QuotientInfo& qi : enumerate_quotients(gH, vertex_guard)) {
        if (qi.graph.canonical_key() == top) continue;
        const auto into_top = morphism(qi.graph, gJ);
        if (!into_top) continue;
        if (is_free_factor(qi.graph, gJ, vertex_guard)) return false;
    }
    return true;
}

}  // namespace ramlab
