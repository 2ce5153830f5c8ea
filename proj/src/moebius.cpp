#include "ramlab/moebius.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>
#include <utility>

#include "ramlab/primitivity.hpp"

namespace ramlab {

namespace {

Rational rational_power(int base, int exponent) {
    BigInt p = 1;
    for (int i = 0; i < std::abs(exponent); ++i) p *= base;
    return exponent >= 0 ? Rational(p) : Rational(BigInt(1), p);
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

// ---- Spanning trees and generator words ----

struct SpanningTree {
    std::vector<char> is_tree;     // per edge index
    std::vector<int> parent_step;  // per vertex: signed edge (1-based) into it
    std::vector<int> parent;       // parent vertex; root has -1
};

SpanningTree spanning_tree(const CoreGraph& g) {
    SpanningTree t;
    const int m = static_cast<int>(g.edges.size());
    t.is_tree.assign(m, 0);
    t.parent_step.assign(g.num_vertices, 0);
    t.parent.assign(g.num_vertices, -1);
    std::vector<char> seen(g.num_vertices, 0);
    std::vector<int> queue = {g.basepoint};
    seen[g.basepoint] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (int e = 0; e < m; ++e) {
            if (g.edges[e].origin == v && !seen[g.edges[e].terminus]) {
                const int w = g.edges[e].terminus;
                seen[w] = 1;
                t.is_tree[e] = 1;
                t.parent_step[w] = e + 1;
                t.parent[w] = v;
                queue.push_back(w);
            } else if (g.edges[e].terminus == v && !seen[g.edges[e].origin]) {
                const int w = g.edges[e].origin;
                seen[w] = 1;
                t.is_tree[e] = 1;
                t.parent_step[w] = -(e + 1);
                t.parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    if (std::find(seen.begin(), seen.end(), 0) != seen.end())
        throw std::logic_error("spanning_tree: graph is not connected");
    return t;
}

// Signed edge steps walking v up to the root.
std::vector<int> path_to_root(const SpanningTree& t, int v) {
    std::vector<int> steps;
    while (t.parent[v] != -1) {
        steps.push_back(-t.parent_step[v]);
        v = t.parent[v];
    }
    return steps;
}

// Free generators of the graph's vertex group: one closed path per non-tree
// edge, as signed (1-based) edge indices.
std::vector<std::vector<int>> generator_paths(const CoreGraph& g, const SpanningTree& t) {
    std::vector<std::vector<int>> gens;
    for (int e = 0; e < static_cast<int>(g.edges.size()); ++e) {
        if (t.is_tree[e]) continue;
        std::vector<int> word;
        const std::vector<int> up = path_to_root(t, g.edges[e].origin);
        for (auto it = up.rbegin(); it != up.rend(); ++it) word.push_back(-*it);
        word.push_back(e + 1);
        const std::vector<int> down = path_to_root(t, g.edges[e].terminus);
        word.insert(word.end(), down.begin(), down.end());
        gens.push_back(std::move(word));
    }
    return gens;
}

std::vector<std::vector<int>> permutation_tables(int n) {
    std::vector<int> base(n);
    std::iota(base.begin(), base.end(), 0);
    std::vector<std::vector<int>> tables;
    do {
        tables.push_back(base);
    } while (std::next_permutation(base.begin(), base.end()));
    return tables;
}

// Exact expectation of common fixed points of the given non-tree-edge words
// (each entry: slot into the assignment tuple, inverted flag) over all
// (n!)^slots assignments.
Rational average_common_fixed(const std::vector<std::vector<std::pair<int, bool>>>& gens,
                              int slots, int n) {
    const std::vector<std::vector<int>> tables = permutation_tables(n);
    std::vector<std::vector<int>> inverses(tables.size(), std::vector<int>(n));
    for (std::size_t i = 0; i < tables.size(); ++i)
        for (int x = 0; x < n; ++x) inverses[i][tables[i][x]] = x;

    const long long m = static_cast<long long>(tables.size());
    std::vector<int> idx(slots, 0);
    unsigned long long sum = 0;
    for (;;) {
        int fixed = 0;
        for (int p = 0; p < n; ++p) {
            bool all = true;
            for (const auto& gen : gens) {
                int q = p;
                for (const auto& [slot, inv] : gen)
                    q = inv ? inverses[idx[slot]][q] : tables[idx[slot]][q];
                if (q != p) {
                    all = false;
                    break;
                }
            }
            fixed += all;
        }
        sum += static_cast<unsigned long long>(fixed);
        int pos = slots - 1;
        while (pos >= 0 && idx[pos] == m - 1) idx[pos--] = 0;
        if (pos < 0) break;
        ++idx[pos];
    }
    BigInt denominator = 1;
    for (int i = 0; i < slots; ++i) denominator *= BigInt(m);
    return Rational(BigInt(sum), denominator);
}

// A linear extension of the interval order (descendants count strictly grows
// along the order, so sorting by it is a valid extension).
std::vector<int> linear_extension(const QuotientInterval& iv) {
    const int m = static_cast<int>(iv.nodes.size());
    std::vector<int> below(m, 0), order(m);
    for (int j = 0; j < m; ++j)
        for (int i = 0; i < m; ++i) below[j] += (i != j && iv.leq[i][j]);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](int a, int b) { return below[a] < below[b]; });
    return order;
}

}  // namespace

// ---- Quotient interval ----

int QuotientInterval::top() const {
    for (int i = 0; i < static_cast<int>(nodes.size()); ++i)
        if (nodes[i].num_vertices == 1) return i;
    throw std::logic_error("QuotientInterval: no one-vertex node");
}

QuotientInterval interval_poset(const CoreGraph& g, int vertex_guard) {
    QuotientInterval interval;
    for (QuotientInfo& info : enumerate_quotients(g, vertex_guard))
        interval.nodes.push_back(std::move(info.graph));
    const int m = static_cast<int>(interval.nodes.size());
    interval.leq.assign(m, std::vector<bool>(m, false));
    for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j)
            interval.leq[i][j] = morphism(interval.nodes[i], interval.nodes[j]).has_value();
    return interval;
}

// ---- Exact expectations ----

Rational phi_exact(const CoreGraph& gM, const CoreGraph& gN, int n, int max_n,
                   int max_rank) {
    if (n < 1) throw std::invalid_argument("phi_exact: n must be positive");
    if (n > max_n || gN.rank() > max_rank)
        throw GuardError("phi_exact: beyond exact-enumeration guard (n <= " +
                         std::to_string(max_n) + ", rank <= " +
                         std::to_string(max_rank) + ")");
    const std::optional<GraphMorphism> eta = morphism(gM, gN);
    if (!eta) throw std::invalid_argument("phi_exact: no morphism between the graphs");

    const SpanningTree tree_n = spanning_tree(gN);
    std::vector<int> slot_of(gN.edges.size(), -1);
    int slots = 0;
    for (int e = 0; e < static_cast<int>(gN.edges.size()); ++e)
        if (!tree_n.is_tree[e]) slot_of[e] = slots++;

    const SpanningTree tree_m = spanning_tree(gM);
    std::vector<std::vector<std::pair<int, bool>>> gens;
    for (const std::vector<int>& path : generator_paths(gM, tree_m)) {
        std::vector<std::pair<int, bool>> mapped;
        for (int step : path) {
            const int image = eta->edge_map[std::abs(step) - 1];
            if (tree_n.is_tree[image]) continue;  // acts as the identity
            mapped.emplace_back(slot_of[image], step < 0);
        }
        if (!mapped.empty()) gens.push_back(std::move(mapped));
    }
    if (slots == 0 || gens.empty()) return Rational(n);
    return average_common_fixed(gens, slots, n);
}

// ---- Moebius inversion ----

int MoebiusTable::index_of_n(int n) const {
    for (int i = 0; i < static_cast<int>(n_values.size()); ++i)
        if (n_values[i] == n) return i;
    throw std::invalid_argument("MoebiusTable: n = " + std::to_string(n) +
                                " was not computed");
}

namespace {
const Rational& table_at(const MoebiusTable& t,
                         const std::vector<std::vector<std::vector<Rational>>>& v,
                         int n, int i, int j) {
    const int m = static_cast<int>(t.interval.nodes.size());
    if (i < 0 || j < 0 || i >= m || j >= m || !t.interval.leq[i][j])
        throw std::invalid_argument("MoebiusTable: nodes are not comparable");
    return v[t.index_of_n(n)][i][j];
}
}  // namespace

const Rational& MoebiusTable::phi_at(int n, int i, int j) const {
    return table_at(*this, phi, n, i, j);
}
const Rational& MoebiusTable::l_at(int n, int i, int j) const {
    return table_at(*this, l, n, i, j);
}
const Rational& MoebiusTable::r_at(int n, int i, int j) const {
    return table_at(*this, r, n, i, j);
}
const Rational& MoebiusTable::c_at(int n, int i, int j) const {
    return table_at(*this, c, n, i, j);
}

MoebiusTable moebius_invert(const QuotientInterval& interval,
                            const std::vector<int>& n_values) {
    if (n_values.empty())
        throw std::invalid_argument("moebius_invert: no n values given");
    for (std::size_t a = 0; a < n_values.size(); ++a) {
        if (n_values[a] < 1)
            throw std::invalid_argument("moebius_invert: n must be positive");
        for (std::size_t b = a + 1; b < n_values.size(); ++b)
            if (n_values[a] == n_values[b])
                throw std::invalid_argument("moebius_invert: duplicate n value");
    }

    MoebiusTable t;
    t.interval = interval;
    t.n_values = n_values;
    const int m = static_cast<int>(interval.nodes.size());
    const std::vector<int> topo = linear_extension(interval);

    for (int n : n_values) {
        std::vector<std::vector<Rational>> phi(m, std::vector<Rational>(m, Rational(0)));
        auto l = phi, r = phi, c = phi;
        for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
                if (interval.leq[i][j])
                    phi[i][j] = phi_exact(interval.nodes[i], interval.nodes[j], n);

        // Phi_{i,j} = sum_{i <= p <= j} L_{p,j}: eliminate downward from the top.
        for (int j = 0; j < m; ++j) {
            for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
                const int i = *it;
                if (!interval.leq[i][j]) continue;
                Rational rest(0);
                for (int p = 0; p < m; ++p)
                    if (p != i && interval.leq[i][p] && interval.leq[p][j]) rest += l[p][j];
                l[i][j] = phi[i][j] - rest;
            }
        }
        // Phi_{i,j} = sum_{i <= p <= j} R_{i,p}: eliminate upward from the bottom.
        for (int i = 0; i < m; ++i) {
            for (int j : topo) {
                if (!interval.leq[i][j]) continue;
                Rational rest(0);
                for (int p = 0; p < m; ++p)
                    if (p != j && interval.leq[i][p] && interval.leq[p][j]) rest += r[i][p];
                r[i][j] = phi[i][j] - rest;
            }
        }
        // R_{i,j} = sum_{i <= p <= j} C_{p,j}: a second one-sided elimination.
        for (int j = 0; j < m; ++j) {
            for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
                const int i = *it;
                if (!interval.leq[i][j]) continue;
                Rational rest(0);
                for (int p = 0; p < m; ++p)
                    if (p != i && interval.leq[i][p] && interval.leq[p][j]) rest += c[p][j];
                c[i][j] = r[i][j] - rest;
            }
        }

        // Re-verify every defining identity before trusting the table.
        for (int i = 0; i < m; ++i) {
            for (int j = 0; j < m; ++j) {
                if (!interval.leq[i][j]) continue;
                Rational sum_l(0), sum_r(0), sum_c(0);
                for (int p = 0; p < m; ++p) {
                    if (!(interval.leq[i][p] && interval.leq[p][j])) continue;
                    sum_l += l[p][j];
                    sum_r += r[i][p];
                    for (int q = 0; q < m; ++q)
                        if (interval.leq[p][q] && interval.leq[q][j]) sum_c += c[p][q];
                }
                if (sum_l != phi[i][j] || sum_r != phi[i][j] || sum_c != phi[i][j])
                    throw std::logic_error("moebius_invert: inversion identities failed");
            }
        }

        t.phi.push_back(std::move(phi));
        t.l.push_back(std::move(l));
        t.r.push_back(std::move(r));
        t.c.push_back(std::move(c));
    }
    return t;
}

// ---- R-support verification ----

RSupportReport verify_r_support(const ReducedWord& w, const std::vector<int>& n_values,
                                int vertex_guard) {
    const CoreGraph gH =
        w.empty() ? from_words(w.alphabet_size, std::vector<ReducedWord>{})
                  : from_words(w.alphabet_size, std::vector<ReducedWord>{w});
    RSupportReport report;
    report.interval = interval_poset(gH, vertex_guard);
    const MoebiusTable table = moebius_invert(report.interval, n_values);

    const int m = static_cast<int>(report.interval.nodes.size());
    const int bottom = report.interval.bottom();
    report.algebraic.resize(m);
    for (int j = 0; j < m; ++j)
        report.algebraic[j] = is_algebraic_extension(report.interval.nodes[bottom],
                                                     report.interval.nodes[j], vertex_guard);
    for (int j = 0; j < m; ++j) {
        if (report.algebraic[j]) continue;
        for (int n : n_values) {
            const Rational& r = table.r_at(n, bottom, j);
            if (r != Rational(0)) {
                report.ok = false;
                report.violations.push_back({j, n, r});
            }
        }
    }
    return report;
}

// ---- Monte-Carlo estimator ----

MonteCarloEstimate phi_monte_carlo(const ReducedWord& w, int n, long trials,
                                   std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("phi_monte_carlo: n must be positive");
    if (trials < 1) throw std::invalid_argument("phi_monte_carlo: trials must be positive");
    if (w.empty()) return {static_cast<double>(n), 0.0, trials};

    Rng rng(seed);
    const RawWord raw = as_raw(w);
    double sum = 0.0, sum_squares = 0.0;
    std::vector<Permutation> sigmas(w.alphabet_size);
    for (long i = 0; i < trials; ++i) {
        for (int s = 0; s < w.alphabet_size; ++s) sigmas[s] = random_permutation(n, rng);
        const double x = fixed_points(evaluate_word(raw, sigmas));
        sum += x;
        sum_squares += x * x;
    }
    const double mean = sum / static_cast<double>(trials);
    double std_error = 0.0;
    if (trials > 1) {
        const double variance =
            std::max(0.0, (sum_squares - trials * mean * mean) / (trials - 1));
        std_error = std::sqrt(variance / static_cast<double>(trials));
    }
    return {mean, std_error, trials};
}

// ---- Asymptotic bound checker ----

std::vector<AsymptoticCheck> asymptotic_check(const ReducedWord& w,
                                              const std::vector<int>& n_values,
                                              long trials, double z,
                                              std::uint64_t seed, int vertex_guard) {
    const int t = w.length();
    for (int n : n_values)
        if (n <= t * t)
            throw std::invalid_argument("asymptotic_check: need n > |w|^2 = " +
                                        std::to_string(t * t) + ", got n = " +
                                        std::to_string(n));

    const PrimitivityReport rep = primitivity_rank(w, vertex_guard);
    const int crit_count = static_cast<int>(rep.crit.size());

    // Letters actually used, densely renumbered for the exact enumeration.
    std::vector<int> used;
    for (const Letter& l : w.letters)
        if (std::find(used.begin(), used.end(), l.index) == used.end())
            used.push_back(l.index);
    std::sort(used.begin(), used.end());
    const int u = static_cast<int>(used.size());
    RawWord dense;
    dense.alphabet_size = std::max(u, 1);
    for (const Letter& l : w.letters) {
        const int pos = static_cast<int>(
            std::find(used.begin(), used.end(), l.index) - used.begin());
        dense.letters.push_back(Letter{pos + 1, l.sign});
    }

    std::vector<AsymptoticCheck> out;
    for (int n : n_values) {
        AsymptoticCheck check;
        check.n = n;

        Rational bound(1);
        if (rep.is_finite()) {
            BigInt t_power = 1;
            for (int i = 0; i < 2 + 2 * *rep.pi; ++i) t_power *= t;
            bound += rational_power(n, 1 - *rep.pi) *
                     (Rational(crit_count) + Rational(t_power, BigInt(n - t * t)));
        }
        check.bound = to_double(bound);

        check.used_exact = (n <= kDefaultPhiN && u <= kDefaultPhiRank);
        if (check.used_exact) {
            Rational expected(n);
            if (u > 0) {
                std::vector<std::vector<std::pair<int, bool>>> gens(1);
                for (const Letter& l : dense.letters)
                    gens[0].emplace_back(l.index - 1, l.sign < 0);
                expected = average_common_fixed(gens, u, n);
            }
            check.expected = to_double(expected);
            check.ok = expected <= bound;
            if (rep.is_finite()) {
                const Rational residual =
                    (expected - Rational(1) -
                     Rational(crit_count) * rational_power(n, 1 - *rep.pi)) *
                    rational_power(n, *rep.pi);
                check.residual = to_double(residual);
            } else {
                check.residual = check.expected - 1.0;
            }
        } else {
            const MonteCarloEstimate est =
                phi_monte_carlo(w, n, trials, derive_seed(seed, static_cast<std::uint64_t>(n)));
            check.expected = est.mean;
            check.std_error = est.std_error;
            if (rep.is_finite()) {
                check.ok = est.mean + z * est.std_error <= check.bound;
                check.residual = (est.mean - 1.0 -
                                  crit_count * std::pow(n, 1.0 - *rep.pi)) *
                                 std::pow(n, *rep.pi);
            } else {
                check.ok = std::abs(est.mean - 1.0) <= z * est.std_error;
                check.residual = est.mean - 1.0;
            }
        }
        out.push_back(check);
    }
    return out;
}

}  // namespace ramlab
