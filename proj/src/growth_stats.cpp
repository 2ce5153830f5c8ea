#include "ramlab/growth_stats.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ramlab/spectral.hpp"

namespace ramlab {

namespace {

void zero_buckets(std::map<int, long long>& buckets, int top_finite) {
    buckets[kInfiniteRankBucket] = 0;
    for (int m = 0; m <= top_finite; ++m) buckets[m] = 0;
}

}  // namespace

long long RankHistogram::total() const {
    long long sum = 0;
    for (const auto& [m, c] : counts) sum += c;
    return sum;
}

long long RankHistogram::count(int m) const {
    const auto it = counts.find(m);
    return it == counts.end() ? 0 : it->second;
}

long long RankHistogram::crit_sum(int m) const {
    const auto it = crit_sums.find(m);
    return it == crit_sums.end() ? 0 : it->second;
}

std::string RankHistogram::to_csv() const {
    std::string out = "t,m,count,crit_sum\n";
    const auto row = [&](int m) {
        out += std::to_string(t);
        out += ',';
        out += m == kInfiniteRankBucket ? std::string("inf") : std::to_string(m);
        out += ',';
        out += std::to_string(count(m));
        out += ',';
        out += std::to_string(crit_sum(m));
        out += '\n';
    };
    for (const auto& [m, c] : counts) {
        if (m != kInfiniteRankBucket) row(m);
    }
    if (counts.count(kInfiniteRankBucket)) row(kInfiniteRankBucket);
    return out;
}

const PrimitivityReport& classify_cached(const ReducedWord& w) {
    static std::map<std::string, PrimitivityReport> cache;
    std::string key = std::to_string(w.alphabet_size) + '|' + word_to_string(w);
    auto [it, inserted] = cache.try_emplace(std::move(key));
    if (inserted) it->second = primitivity_rank(w);
    return it->second;
}

RankHistogram classify_words(int k, int t, WordMode mode, bool with_crit) {
    if (k < 1) {
        throw std::invalid_argument("classify_words: need at least one letter");
    }
    if (t < 0) {
        throw std::invalid_argument("classify_words: length must be nonnegative");
    }
    RankHistogram hist;
    hist.k = k;
    hist.t = t;
    zero_buckets(hist.counts, k);
    if (with_crit) zero_buckets(hist.crit_sums, k);
    for_each_word(k, t, mode, [&](const RawWord& raw) {
        const PrimitivityReport& rep = classify_cached(reduce(raw));
        const int bucket = rep.is_finite() ? *rep.pi : kInfiniteRankBucket;
        ++hist.counts[bucket];
        if (with_crit) {
            hist.crit_sums[bucket] += static_cast<long long>(rep.crit.size());
        }
    });
    return hist;
}

RankHistogram classify_cycles(const BaseGraph& base, int t) {
    validate_base(base);
    if (t < 0) {
        throw std::invalid_argument("classify_cycles: length must be nonnegative");
    }

    // Guard on the number of walks the scan will visit.
    const MultiGraph mg = base_multigraph(base);
    const int nv = base.num_vertices;
    std::vector<BigInt> walks(nv, BigInt(1));
    for (int step = 0; step < t; ++step) {
        std::vector<BigInt> next(nv, BigInt(0));
        for (int u = 0; u < nv; ++u) {
            for (int v = 0; v < nv; ++v) {
                if (mg.adjacency[u][v] > 0) {
                    next[u] += BigInt(mg.adjacency[u][v]) * walks[v];
                }
            }
        }
        walks = std::move(next);
    }
    BigInt walk_total = 0;
    for (const BigInt& w : walks) walk_total += w;
    if (walk_total > BigInt(enumeration_guard_limit())) {
        throw GuardError("classify_cycles: path enumeration exceeds the guard");
    }

    const int num_edges = static_cast<int>(base.edges.size());
    const int rank = num_edges - nv + 1;
    RankHistogram hist;
    hist.k = num_edges;
    hist.t = t;
    zero_buckets(hist.counts, rank);
    zero_buckets(hist.crit_sums, rank);

    // Directed steps available from each vertex, labelled by edge index.
    std::vector<std::vector<std::pair<int, Letter>>> steps(nv);
    std::vector<LabeledEdge> labeled;
    for (int e = 0; e < num_edges; ++e) {
        const auto [a, b] = base.edges[e];
        steps[a].push_back({b, Letter{e + 1, +1}});
        steps[b].push_back({a, Letter{e + 1, -1}});
        labeled.push_back(LabeledEdge{a, b, e + 1});
    }

    std::map<std::string, bool> verified_at_origin;
    std::vector<Letter> word(static_cast<std::size_t>(t));
    for (int origin = 0; origin < nv; ++origin) {
        CoreGraph pointed;
        pointed.k = std::max(num_edges, 1);
        pointed.num_vertices = nv;
        pointed.basepoint = origin;
        pointed.edges = labeled;

        const std::function<void(int, int)> scan = [&](int v, int depth) {
            if (depth == t) {
                if (v != origin) return;
                const RawWord raw{word, std::max(num_edges, 1)};
                const PrimitivityReport& rep = classify_cached(reduce(raw));
                const int bucket =
                    rep.is_finite() ? *rep.pi : kInfiniteRankBucket;
                if (bucket != kInfiniteRankBucket && bucket > rank) {
                    throw std::logic_error(
                        "classify_cycles: rank bound violated");
                }
                ++hist.counts[bucket];
                hist.crit_sums[bucket] +=
                    static_cast<long long>(rep.crit.size());
                // Each critical subgroup must itself trace closed paths at
                // this origin: its core graph maps into the pointed base.
                std::string key = word_to_string(reduce(raw));
                if (!verified_at_origin.count(key)) {
                    for (const CoreGraph& crit : rep.crit) {
                        if (!morphism(crit, pointed)) {
                            throw std::logic_error(
                                "classify_cycles: critical subgroup does not "
                                "map into the base");
                        }
                    }
                    verified_at_origin[key] = true;
                }
                return;
            }
            for (const auto& [next_v, letter] : steps[v]) {
                word[static_cast<std::size_t>(depth)] = letter;
                scan(next_v, depth + 1);
            }
        };
        scan(origin, 0);
        verified_at_origin.clear();
    }
    return hist;
}

long long trace_twice_count(const CoreGraph& gN, int t) {
    if (!gN.is_folded() || !gN.is_connected()) {
        throw std::invalid_argument(
            "trace_twice_count: graph must be folded and connected");
    }
    if (t < 0) {
        throw std::invalid_argument(
            "trace_twice_count: length must be nonnegative");
    }
    const int num_edges = static_cast<int>(gN.edges.size());
    if (t < 2 * num_edges) return 0;
    if (t == 0) return 1;  // no edges: only the empty word, trivially covering

    // Directed edge instances: 2e forward, 2e+1 backward; rev(h) = h ^ 1.
    const int half = 2 * num_edges;
    std::vector<int> tail(half), head(half);
    std::vector<std::vector<int>> leaving(gN.num_vertices);
    for (int e = 0; e < num_edges; ++e) {
        tail[2 * e] = gN.edges[e].origin;
        head[2 * e] = gN.edges[e].terminus;
        tail[2 * e + 1] = gN.edges[e].terminus;
        head[2 * e + 1] = gN.edges[e].origin;
        leaving[tail[2 * e]].push_back(2 * e);
        leaving[tail[2 * e + 1]].push_back(2 * e + 1);
    }

    // Guard on the non-backtracking walks the scan will visit.
    std::vector<BigInt> dp(half, BigInt(0));
    for (int h : leaving[gN.basepoint]) dp[h] = 1;
    for (int step = 1; step < t; ++step) {
        std::vector<BigInt> next(half, BigInt(0));
        for (int h = 0; h < half; ++h) {
            if (dp[h] == 0) continue;
            for (int g : leaving[head[h]]) {
                if (g != (h ^ 1)) next[g] += dp[h];
            }
        }
        dp = std::move(next);
    }
    BigInt walk_total = 0;
    for (const BigInt& w : dp) walk_total += w;
    if (walk_total > BigInt(enumeration_guard_limit())) {
        throw GuardError("trace_twice_count: walk enumeration exceeds the guard");
    }

    long long found = 0;
    std::vector<int> visits(num_edges, 0);
    int deficiency = 2 * num_edges;  // sum over edges of max(0, 2 - visits)
    const std::function<void(int, int, int)> scan = [&](int v, int last,
                                                        int depth) {
        if (deficiency > t - depth) return;  // cannot finish covering in time
        if (depth == t) {
            if (v == gN.basepoint && deficiency == 0) ++found;
            return;
        }
        for (int h : leaving[v]) {
            if (last >= 0 && h == (last ^ 1)) continue;
            const int e = h / 2;
            ++visits[e];
            if (visits[e] <= 2) --deficiency;
            scan(head[h], h, depth + 1);
            if (visits[e] <= 2) ++deficiency;
            --visits[e];
        }
    };
    scan(gN.basepoint, -1, 0);
    return found;
}

BoundSpec bound_evaluator(int d, double c) {
    if (d < 3) {
        throw std::invalid_argument(
            "bound_evaluator: degree must be at least 3");
    }
    if (!(c > 1.0)) {
        throw std::invalid_argument(
            "bound_evaluator: compression parameter must exceed 1");
    }
    BoundSpec spec;
    spec.c = c;
    spec.terms.push_back(c * 2.0 * std::sqrt(static_cast<double>(d) - 1.0));
    for (int m = 1; m <= d / 2; ++m) {
        spec.terms.push_back(cogrowth_g(2.0 * m - 1.0, d) /
                             std::pow(c, m - 1));
    }
    const auto it = std::max_element(spec.terms.begin(), spec.terms.end());
    spec.max_term = *it;
    spec.argmax = static_cast<int>(it - spec.terms.begin());
    return spec;
}

OptimizedBound optimize_bound(int d) {
    // max(one increasing term, several non-increasing terms) is unimodal.
    double lo = 1.0 + 1e-12;
    double hi = 3.0;
    for (int iter = 0; iter < 300; ++iter) {
        const double m1 = lo + (hi - lo) / 3.0;
        const double m2 = hi - (hi - lo) / 3.0;
        if (bound_evaluator(d, m1).max_term <= bound_evaluator(d, m2).max_term) {
            hi = m2;
        } else {
            lo = m1;
        }
    }
    const double c = 0.5 * (lo + hi);
    return {c, bound_evaluator(d, c).max_term};
}

BoundSpec general_bound_evaluator(int rank_omega, double rho, double c) {
    if (rank_omega < 1) {
        throw std::invalid_argument(
            "general_bound_evaluator: rank must be at least 1");
    }
    if (!(rho > 0.0)) {
        throw std::invalid_argument(
            "general_bound_evaluator: spectral radius must be positive");
    }
    if (!(c > 1.0)) {
        throw std::invalid_argument(
            "general_bound_evaluator: compression parameter must exceed 1");
    }
    BoundSpec spec;
    spec.c = c;
    spec.terms.push_back(c * rho);
    for (int m = 1; m <= rank_omega; ++m) {
        spec.terms.push_back((2.0 * m - 1.0) * rho / std::pow(c, m - 1));
    }
    const auto it = std::max_element(spec.terms.begin(), spec.terms.end());
    spec.max_term = *it;
    spec.argmax = static_cast<int>(it - spec.terms.begin());
    return spec;
}

}  // namespace ramlab
