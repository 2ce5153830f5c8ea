#pragma once
// Stallings core graphs of finitely generated subgroups of F_k:
// construction from generators, folding, morphisms, vertex-partition
// quotients, rank, membership, the partition distance between a graph and a
// quotient of it, and the distance-based free-factor test.

#include <optional>
#include <string>
#include <vector>

#include "ramlab/free_words.hpp"

namespace ramlab {

// Directed edge labelled by a generator index (1..k).
struct LabeledEdge {
    int origin = 0;
    int terminus = 0;
    int label = 1;
    friend bool operator==(const LabeledEdge&, const LabeledEdge&) = default;
};

// A pointed, connected, folded, edge-labelled directed multigraph.
//
// Folded means no two distinct edges share (origin, label) and no two share
// (terminus, label). Core graphs of subgroups additionally have degree >= 2
// everywhere except possibly the basepoint (a loop counts 2); that extra
// property is checked by is_core(), not enforced, because arbitrary folded
// base graphs are useful too. The single-vertex, zero-edge graph represents
// the trivial subgroup. Values are immutable after construction; all
// operations below are pure functions.
struct CoreGraph {
    int k = 1;  // alphabet size
    int num_vertices = 1;
    int basepoint = 0;
    std::vector<LabeledEdge> edges;

    int rank() const;         // |E| - |V| + 1 (requires connectivity)
    int degree(int v) const;  // loops contribute 2

    bool is_folded() const;
    bool is_connected() const;
    bool is_core() const;  // folded, connected, degree >= 2 off the basepoint

    // Unique out-/in-edge index at (vertex, label), or -1 when absent.
    int out_edge(int v, int label) const;
    int in_edge(int v, int label) const;

    // Vertices renumbered by BFS from the basepoint scanning (label 1 out,
    // label 1 in, label 2 out, ...), edges sorted: two folded pointed graphs
    // are equal iff their canonical forms compare ==. canonical_key() is a
    // compact text form of the canonical graph, usable as a map key.
    CoreGraph canonical() const;
    std::string canonical_key() const;

    friend bool operator==(const CoreGraph&, const CoreGraph&) = default;
};

// A partition of {0..n-1} into blocks; the norm ||P|| = n - #blocks counts
// the merges the partition performs.
struct VertexPartition {
    std::vector<int> block_of;  // block ids, normalised to first-use order

    static VertexPartition discrete(int n);
    static VertexPartition from_blocks(int n, const std::vector<std::vector<int>>& blocks);
    // Cycle structure of a permutation as a partition of {0..n-1}; its norm
    // n - #cycles is the word-length metric on the symmetric group.
    static VertexPartition from_permutation_cycles(const Permutation& p);

    int size() const { return static_cast<int>(block_of.size()); }
    int block_count() const;
    int norm() const { return size() - block_count(); }
    bool coarsens(const VertexPartition& finer) const;
    std::vector<std::vector<int>> blocks() const;
    friend bool operator==(const VertexPartition&, const VertexPartition&) = default;
};

// A partition of equally-labelled edges; merging an edge block identifies
// corresponding origins and termini. Mixing labels inside a block is an
// error.
struct EdgePartition {
    std::vector<std::vector<int>> blocks;  // edge indices of the source graph
};

// Label-, direction- and basepoint-preserving graph map (necessarily an
// immersion and unique when it exists). surjective records whether every
// target vertex and edge is hit — the "covers" relation ordering quotient
// posets.
struct GraphMorphism {
    std::vector<int> vertex_map;
    std::vector<int> edge_map;
    bool surjective = false;
};

// ---- construction ----------------------------------------------------------

// Core graph of <generators>: wedge the generator cycles at a basepoint,
// fold, trim hanging trees (keeping the basepoint). Empty list or all-empty
// words give the trivial one-vertex graph.
CoreGraph from_words(int k, const std::vector<ReducedWord>& generators);
CoreGraph from_words(int k, const std::vector<std::string>& generator_text);

// Bouquet of k loops at one vertex (the full group F_k).
CoreGraph bouquet(int k);

// A labelled pointed graph that need not be folded.
struct PreGraph {
    int k = 1;
    int num_vertices = 1;
    int basepoint = 0;
    std::vector<LabeledEdge> edges;
};

// Stallings folding: repeatedly merge two equally-labelled edges sharing an
// origin or a terminus. The result is independent of the merge order; the
// induced partition records which input vertices were identified.
struct FoldResult {
    CoreGraph graph;
    VertexPartition induced;  // on the input's vertex set
};
FoldResult fold(const PreGraph& g);

// ---- queries ---------------------------------------------------------------

// True iff w spells a closed path at the basepoint (inverse letters traverse
// edges against their orientation). The empty word is always a member.
bool membership(const ReducedWord& w, const CoreGraph& g);

// The unique basepoint-preserving morphism src -> dst, if any; exists iff
// src's subgroup lies in dst's.
std::optional<GraphMorphism> morphism(const CoreGraph& src, const CoreGraph& dst);

// The image of src inside dst under morphism(src, dst), as a pointed graph.
// It is automatically a core graph (reduced paths map to reduced paths in a
// folded target), namely the core graph of src's subgroup viewed as the
// intermediate subgroup it generates in dst's; it is also always a quotient
// of src.
std::optional<CoreGraph> morphism_image(const CoreGraph& src, const CoreGraph& dst);

// Merge the blocks of P and fold. The induced partition of g's vertices is
// always coarser than P.
FoldResult quotient(const CoreGraph& g, const VertexPartition& p);
FoldResult quotient(const CoreGraph& g, const EdgePartition& p);

// One distinct quotient graph with the minimal partition norm producing it.
struct QuotientInfo {
    CoreGraph graph;
    int min_norm = 0;
};

// All distinct quotients of g over every vertex partition, g itself at
// norm 0, each with the minimal generating norm; ordered by (min_norm, rank,
// canonical key). Throws GuardError past the Bell-number vertex guard.
std::vector<QuotientInfo> enumerate_quotients(const CoreGraph& g,
                                              int vertex_guard = kDefaultPartitionVertexGuard);

// Minimal ||P|| over vertex partitions P with quotient(gH, P) == gJ.
// Requires gJ to be a quotient of gH (else std::invalid_argument); satisfies
//   rank(J) - rank(H) <= x_distance(H, J) <= rank(J),
// with the lower bound attained exactly for free factors.
int x_distance(const CoreGraph& gH, const CoreGraph& gJ,
               int vertex_guard = kDefaultPartitionVertexGuard);

// True iff H is a free factor of J, decided by x_distance(gH, gJ) ==
// rank(gJ) - rank(gH); gJ must be a quotient of gH. When the morphism
// gH -> gJ is injective, gH is a subgraph of gJ and the answer is true
// without any partition search.
bool is_free_factor(const CoreGraph& gH, const CoreGraph& gJ,
                    int vertex_guard = kDefaultPartitionVertexGuard);

// Max degree and topological edge count (arcs between vertices of degree
// >= 3, loops and isolated cycles counting 1), after trimming the hanging
// path at the basepoint if it is a leaf. For a core graph of rank r >= 1:
// max degree <= 2r and topological edges <= 3r - 1.
struct DegreeProfile {
    int max_degree = 0;
    int topological_edges = 0;
};
DegreeProfile degree_profile(const CoreGraph& g);

// ---- serialization ---------------------------------------------------------

// JSON with alphabet size, vertex count, basepoint and edge triples; the
// canonical form is serialised, so equal subgroups give byte-equal strings.
std::string core_graph_to_json(const CoreGraph& g);
CoreGraph core_graph_from_json(const std::string& json_text);

}  // namespace ramlab
