#pragma once
// Samplers for random covers and random regular multigraphs: the permutation
// model (covers of a bouquet), covers of arbitrary connected base graphs,
// the configuration/matching model, and the odd-degree permutation-plus-
// matching model; plus closed-path lift counting on covers.
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ramlab/common.hpp"
#include "ramlab/free_words.hpp"

namespace ramlab {

// ---- Base graphs ----

// Connected multigraph with arbitrarily oriented edges; edge index e carries
// label e + 1, so closed paths are words over the edge alphabet. Loops and
// parallel edges are allowed.
struct BaseGraph {
    int num_vertices = 0;
    std::vector<std::pair<int, int>> edges;  // (origin, terminus)

    int degree(int v) const;  // loops contribute 2
    bool is_connected() const;

    static BaseGraph bouquet(int loops);
    static BaseGraph cycle(int length);          // 1 = loop, 2 = parallel pair
    static BaseGraph complete(int m);
    static BaseGraph single_edge();
    static BaseGraph parallel_edges(int count);  // 2 vertices joined count times
};

// Throws std::invalid_argument unless the base is nonempty, has valid edge
// endpoints, and is connected.
void validate_base(const BaseGraph& base);

// ---- Multigraphs ----

// Symmetric adjacency with multiplicities; a loop contributes 2 to its
// diagonal entry (and hence 2 to the degree), keeping trace powers aligned
// with closed-path counts.
struct MultiGraph {
    int num_vertices = 0;
    std::vector<std::vector<int>> adjacency;

    int degree(int v) const;
    bool is_regular(int d) const;
    bool is_regular() const;  // every degree equals degree(0)
    bool is_simple() const;  // no loops, no parallel edges

    friend bool operator==(const MultiGraph&, const MultiGraph&) = default;
};

int loop_count(const MultiGraph& g);
MultiGraph base_multigraph(const BaseGraph& base);

// ---- Covers ----

// An n-sheeted cover: vertex set V(base) x [n], one permutation per base
// edge; base edge e = (u, v) lifts to edges (u, i) -- (v, sigma_e(i)).
struct CoverGraph {
    BaseGraph base;
    int n = 1;
    std::vector<Permutation> sigma;

    int vertex_index(int v, int i) const { return v * n + i; }
    MultiGraph to_multigraph() const;
};

// Uniform cover of the base: an independent uniform permutation per edge.
CoverGraph sample_cover(const BaseGraph& base, int n, Rng& rng);

// d-regular permutation model: uniform cover of the bouquet of d/2 loops.
// d must be even and >= 2 (for odd d use sample_perm_plus_matching).
CoverGraph sample_permutation_model(int n, int d, Rng& rng);

// Configuration/matching model: a uniform perfect matching on d*n labeled
// points bucketed d per vertex (point p belongs to vertex p / d). Requires
// d*n even.
MultiGraph sample_matching_model(int n, int d, Rng& rng);

// Odd-degree model: (d-1)/2 uniform permutations plus one uniform perfect
// matching on the vertex set. Requires d odd and n even.
MultiGraph sample_perm_plus_matching(int n, int d, Rng& rng);

// Rejection sampling of a simple d-regular graph from the matching model;
// nullopt if max_attempts resamples all contain a loop or parallel edge.
std::optional<MultiGraph> sample_simple(int n, int d, Rng& rng,
                                        int max_attempts = 1000);

// ---- Lifts ----

// Number of closed lifts of a closed path in the base (letters are signed
// edge labels). Computed as the fixed points of the path's permutation word
// and cross-checked by explicitly lifting the path sheet by sheet; the two
// must agree (logic_error otherwise). The empty path has n lifts. Throws
// std::invalid_argument if w is not a closed path of the base.
int closed_lift_count(const RawWord& w, const CoverGraph& cover);

// ---- Serialization ----

std::string base_graph_to_json(const BaseGraph& base);
BaseGraph base_graph_from_json(const std::string& text);
std::string multigraph_to_json(const MultiGraph& g);
MultiGraph multigraph_from_json(const std::string& text);
// Lines "u,v,count" for u < v plus "v,v,loops" diagonal entries.
std::string multigraph_to_edge_csv(const MultiGraph& g);
std::string cover_to_json(const CoverGraph& cover);
CoverGraph cover_from_json(const std::string& text);

}  // namespace ramlab
