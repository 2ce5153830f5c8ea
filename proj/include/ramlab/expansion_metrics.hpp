#pragma once
// Combinatorial expansion of finite multigraphs: Cheeger constant and
// conductance by exhaustive subset scan, their two-sided spectral
// sandwiches, and the expander-mixing inequality over all vertex-set pairs.

#include <utility>
#include <vector>

#include "ramlab/common.hpp"
#include "ramlab/random_covers.hpp"

namespace ramlab {

// h(G) = min |E(S, V\S)| / |S| over nonempty S with |S| <= |V|/2.
// phi(G) = min |E(S, V\S)| / deg(S) over S with 0 < deg(S) <= deg(V)/2.
// Cut edges count with multiplicity. Requires a connected graph on at least
// two vertices; the exhaustive 2^|V| scan is guarded by `vertex_guard` and by
// the global enumeration limit.
std::pair<double, double> cheeger_and_conductance(
    const MultiGraph& g, int vertex_guard = kDefaultSubsetVertexGuard);

// Ordered-incidence count E(S, T) = sum_{u in S, v in T} a(u, v): edges with
// both endpoints in S cap T count twice (once per orientation) and a loop at
// a vertex of S cap T contributes 2, so E(S, S) = 2 * (edges inside S) and
// E(S, V) = deg(S).
long ordered_incidences(const MultiGraph& g, const std::vector<int>& s,
                        const std::vector<int>& t);

// Exact combinatorial quantities next to their spectral counterparts.
// mixing_max_violation is the largest value of
//   |E(S,T) - pf * vol(S) * vol(T)| - lambda * sqrt(|S| |T|)
// over all 4^|V| subset pairs, where pf is the Perron eigenvalue of the
// adjacency matrix, vol(S) = <1_S, f> with f the unit Perron eigenfunction,
// and lambda is the largest remaining |eigenvalue|; the mixing lemma makes it
// nonpositive.
struct ExpansionReport {
    double cheeger = 0.0;
    double conductance = 0.0;
    double laplacian_nu2 = 0.0;           // second-smallest eigenvalue of D - B
    double markov_mu2 = 0.0;              // second-largest Markov eigenvalue
    double mixing_max_violation = 0.0;
};

// Computes the report and re-verifies the sandwich theorems
//   phi^2 / 2 <= 1 - mu_2 <= 2 phi   and   h^2 / (2 max_deg) <= nu_2 <= 2 h,
// throwing logic_error if either fails (they are theorems; a violation means
// the implementation is wrong). The pair scan costs 4^|V| and is guarded by
// `vertex_guard` and the global enumeration limit.
ExpansionReport inequality_suite(const MultiGraph& g,
                                 int vertex_guard = kDefaultSubsetVertexGuard);

}  // namespace ramlab
