#pragma once
// Finite-length census of primitivity ranks over words and over closed paths
// of a base graph, counts of edge-doubling words in a subgroup, and the
// degree-indexed / rank-indexed upper-bound evaluators with their optimiser.

#include <map>
#include <string>
#include <vector>

#include "ramlab/common.hpp"
#include "ramlab/core_graphs.hpp"
#include "ramlab/free_words.hpp"
#include "ramlab/primitivity.hpp"
#include "ramlab/random_covers.hpp"

namespace ramlab {

// Bucket key for pi = infinity (primitive words).
inline constexpr int kInfiniteRankBucket = -1;

// Census of primitivity ranks among a word family: counts[m] words with
// pi = m (m = kInfiniteRankBucket for primitive), crit_sums[m] the total
// number of critical subgroups over that bucket (empty when not requested).
// Totals: (2k)^t for raw words, 2k(2k-1)^{t-1} for reduced, |CP_t| for
// closed paths.
struct RankHistogram {
    int k = 0;
    int t = 0;
    std::map<int, long long> counts;
    std::map<int, long long> crit_sums;

    long long total() const;
    long long count(int m) const;     // 0 when absent
    long long crit_sum(int m) const;  // 0 when absent
    std::string to_csv() const;       // header t,m,count,crit_sum; m = "inf" for primitive
};

// Classification of one reduced word, memoised process-wide by word text
// (classification of large families revisits the same reduced words many
// times; raw classification always classifies reduce(w), which leaves the
// permutation images unchanged).
const PrimitivityReport& classify_cached(const ReducedWord& w);

// Histogram of pi over all words of length exactly t: every (2k)^t letter
// string in raw mode, every reduced word (2k(2k-1)^{t-1} of them) in reduced
// mode. Guarded by the enumeration limit on the family size.
RankHistogram classify_words(int k, int t, WordMode mode, bool with_crit = true);

// Histogram of pi over all closed paths of edge-length t in the base graph
// (any origin vertex; paths may backtrack). Each path spells a word in the
// free group on the base's edge set. Additionally verifies, per path, that
// every critical subgroup's core graph admits a morphism into the base
// viewed as a core graph pointed at the path's origin; throws logic_error
// on a violation. Values always land in {0..rank(base), infinity}.
RankHistogram classify_cycles(const BaseGraph& base, int t);

// Number of reduced words of length t in the subgroup of gN whose path
// traces every edge of gN at least twice (equivalently: non-backtracking
// closed walks at the basepoint of length t covering each edge >= 2 times;
// zero whenever t < 2|E|).
long long trace_twice_count(const CoreGraph& gN, int t);

// ---- upper-bound evaluators --------------------------------------------------

// The per-rank terms of the degree-d new-eigenvalue bound at compression
// parameter c > 1: term 0 is c * 2*sqrt(d-1), term m (1..d/2) is
// g(2m-1) / c^{m-1} with g = cogrowth_g. The bound is the max term.
struct BoundSpec {
    double c = 0.0;
    std::vector<double> terms;  // index m = 0 .. k (or .. rank)
    double max_term = 0.0;
    int argmax = 0;
};
BoundSpec bound_evaluator(int d, double c);  // d >= 3, c > 1

// Minimise the max term over c by ternary search (the max of one increasing
// and several non-increasing terms is unimodal).
struct OptimizedBound {
    double c = 0.0;
    double value = 0.0;
};
OptimizedBound optimize_bound(int d);

// Rank-indexed analogue for an arbitrary base with universal-cover spectral
// radius rho: term 0 is c * rho, term m (1..rank) is (2m-1) * rho / c^{m-1}.
// At c = sqrt(3) the max is sqrt(3) * rho for every rank >= 2; for rank 1
// the max tends to rho as c -> 1+.
BoundSpec general_bound_evaluator(int rank_omega, double rho, double c);

}  // namespace ramlab
