#pragma once
// Moebius ladder Phi/L/R/C over quotient intervals of a core graph, exact
// small-n fixed-point expectations, Monte-Carlo estimators, and the
// asymptotic bound checker for E[#fixed points of w(sigma_1..sigma_k)].
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ramlab/common.hpp"
#include "ramlab/core_graphs.hpp"
#include "ramlab/free_words.hpp"

namespace ramlab {

// ---- Quotient interval ----

// The full poset of quotients of a root core graph, ordered by
// surjective-morphism existence (M <= N iff the subgroup of M is contained
// in the subgroup of N).  nodes follow enumerate_quotients order, so the
// root sits at index 0 and the one-vertex quotient is the unique top.
struct QuotientInterval {
    std::vector<CoreGraph> nodes;
    std::vector<std::vector<bool>> leq;  // leq[i][j]: nodes[i] <= nodes[j]

    int bottom() const { return 0; }
    int top() const;  // index of the one-vertex quotient
};

QuotientInterval interval_poset(const CoreGraph& g,
                                int vertex_guard = kDefaultPartitionVertexGuard);

// ---- Exact expectations ----

// Phi_{M,N}(n): the expected number of common fixed points of the images of
// M's generators under a uniformly random homomorphism of N's fundamental
// group into the symmetric group S_n.  Computed exactly by averaging over
// all (n!)^rank(N) assignments of permutations to the non-tree edges of a
// spanning tree of gN (tree edges act as the identity); the result does not
// depend on the spanning tree.  Requires a morphism gM -> gN; guarded by
// n <= max_n and rank(gN) <= max_rank (GuardError beyond).
Rational phi_exact(const CoreGraph& gM, const CoreGraph& gN, int n,
                   int max_n = kDefaultPhiN, int max_rank = kDefaultPhiRank);

// ---- Moebius inversion ----

// Exact rational Phi/L/R/C for every comparable pair of interval nodes at
// every requested n.  L and R are the one-sided Moebius inversions of Phi
// (triangular elimination over the interval), C is the two-sided inversion
// obtained by further inverting R; construction re-verifies all defining
// sum identities exactly and throws logic_error on any mismatch.
struct MoebiusTable {
    QuotientInterval interval;
    std::vector<int> n_values;
    // Indexed [n_index][i][j]; zero rational whenever !leq[i][j].
    std::vector<std::vector<std::vector<Rational>>> phi, l, r, c;

    int index_of_n(int n) const;  // throws invalid_argument if absent
    const Rational& phi_at(int n, int i, int j) const;
    const Rational& l_at(int n, int i, int j) const;
    const Rational& r_at(int n, int i, int j) const;
    const Rational& c_at(int n, int i, int j) const;
};

MoebiusTable moebius_invert(const QuotientInterval& interval,
                            const std::vector<int>& n_values);

// ---- R-support verification ----

// R_{H,N} must vanish identically on every quotient N of <w>'s graph that is
// not an algebraic extension of <w>.  Violations are findings, not errors.
struct RSupportViolation {
    int node;    // index into interval.nodes
    int n;
    Rational r;  // the nonzero value found
};

struct RSupportReport {
    bool ok = true;
    std::vector<RSupportViolation> violations;
    QuotientInterval interval;
    std::vector<char> algebraic;  // per node: is_algebraic_extension(bottom, node)
};

RSupportReport verify_r_support(const ReducedWord& w,
                                const std::vector<int>& n_values,
                                int vertex_guard = kDefaultPartitionVertexGuard);

// ---- Monte-Carlo estimator ----

struct MonteCarloEstimate {
    double mean = 0.0;
    double std_error = 0.0;
    long trials = 0;
};

// Unbiased estimator of E[#fixed points of w(sigma_1..sigma_k)] over
// independent uniform sigma_i in S_n.  Deterministic given the seed.
MonteCarloEstimate phi_monte_carlo(const ReducedWord& w, int n, long trials,
                                   std::uint64_t seed);

// ---- Asymptotic bound checker ----

// Per n, verifies E[#fix w(sigma)] <= 1 + n^{1-pi} (|Crit(w)| +
// t^{2+2*pi} / (n - t^2)) with t = |w|, using the exact expectation when
// n and the number of letters used by w fall inside the exact-enumeration
// guard and a Monte-Carlo upper-confidence test (mean + z * SE <= bound)
// otherwise.  For primitive w the bound degenerates to E = 1 and the
// Monte-Carlo channel checks consistency, |mean - 1| <= z * SE, instead.
// residual reports (E - 1 - |Crit| n^{1-pi}) * n^pi, the bounded remainder
// of the leading-term expansion (for primitive w, plain E - 1).
// Every n must exceed t^2 (invalid_argument otherwise).
struct AsymptoticCheck {
    int n = 0;
    bool used_exact = false;
    bool ok = false;
    double expected = 0.0;
    double bound = 0.0;
    double std_error = 0.0;
    double residual = 0.0;
};

std::vector<AsymptoticCheck> asymptotic_check(
    const ReducedWord& w, const std::vector<int>& n_values,
    long trials = 20000, double z = 5.0, std::uint64_t seed = 0,
    int vertex_guard = kDefaultPartitionVertexGuard);

}  // namespace ramlab
