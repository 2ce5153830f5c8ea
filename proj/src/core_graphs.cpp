#include "ramlab/core_graphs.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace ramlab {

namespace {

// ---- union-find ----

struct UnionFind {
    std::vector<int> parent;
    explicit UnionFind(int n) : parent(n) {
        for (int i = 0; i < n; ++i) parent[i] = i;
    }
    int find(int x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    }
    bool unite(int a, int b) {
        a = find(a);
        b = find(b);
        if (a == b) return false;
        if (a > b) std::swap(a, b);  // deterministic: smaller id becomes root
        parent[b] = a;
        return true;
    }
};

VertexPartition partition_from_roots(UnionFind& uf, int n) {
    VertexPartition p;
    p.block_of.assign(n, -1);
    std::map<int, int> ids;
    for (int v = 0; v < n; ++v) {
        const int r = uf.find(v);
        auto [it, fresh] = ids.emplace(r, static_cast<int>(ids.size()));
        p.block_of[v] = it->second;
    }
    return p;
}

// Merge blocks, fold to completion, and return the compact folded graph
// plus the induced partition of the input vertices.
FoldResult fold_impl(int k, int num_vertices, int basepoint,
                     std::vector<LabeledEdge> edges, const VertexPartition* seed) {
    UnionFind uf(num_vertices);
    if (seed) {
        if (seed->size() != num_vertices)
            throw std::invalid_argument("quotient: partition size mismatch");
        std::vector<int> first(seed->block_count(), -1);
        for (int v = 0; v < num_vertices; ++v) {
            int& f = first[seed->block_of[v]];
            if (f < 0)
                f = v;
            else
                uf.unite(f, v);
        }
    }

    std::vector<char> alive(edges.size(), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        // two equally-labelled edges sharing an origin: merge their termini
        std::map<std::pair<int, int>, int> by_origin;
        for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
            if (!alive[i]) continue;
            const auto key = std::make_pair(uf.find(edges[i].origin), edges[i].label);
            auto [it, fresh] = by_origin.emplace(key, i);
            if (!fresh) {
                uf.unite(edges[it->second].terminus, edges[i].terminus);
                alive[i] = 0;
                changed = true;
            }
        }
        // two equally-labelled edges sharing a terminus: merge their origins
        std::map<std::pair<int, int>, int> by_terminus;
        for (int i = 0; i < static_cast<int>(edges.size()); ++i) {
            if (!alive[i]) continue;
            const auto key = std::make_pair(uf.find(edges[i].terminus), edges[i].label);
            auto [it, fresh] = by_terminus.emplace(key, i);
            if (!fresh) {
                uf.unite(edges[it->second].origin, edges[i].origin);
                alive[i] = 0;
                changed = true;
            }
        }
    }

    const VertexPartition induced = partition_from_roots(uf, num_vertices);
    CoreGraph g;
    g.k = k;
    g.num_vertices = induced.block_count();
    g.basepoint = induced.block_of[basepoint];
    for (int i = 0; i < static_cast<int>(edges.size()); ++i)
        if (alive[i])
            g.edges.push_back({induced.block_of[edges[i].origin],
                               induced.block_of[edges[i].terminus], edges[i].label});
    return FoldResult{g.canonical(), induced};
}

BigInt bell_number(int n) {
    std::vector<BigInt> row{1};
    for (int i = 1; i <= n; ++i) {
        std::vector<BigInt> next(i + 1);
        next[0] = row.back();
        for (int j = 1; j <= i; ++j) next[j] = next[j - 1] + row[j - 1];
        row = std::move(next);
    }
    return row[0];
}

}  // namespace

// ---- CoreGraph basics ----

int CoreGraph::rank() const { return static_cast<int>(edges.size()) - num_vertices + 1; }

int CoreGraph::degree(int v) const {
    int d = 0;
    for (const LabeledEdge& e : edges) {
        if (e.origin == v) ++d;
        if (e.terminus == v) ++d;
    }
    return d;
}

bool CoreGraph::is_folded() const {
    std::map<std::pair<int, int>, int> seen;
    for (const LabeledEdge& e : edges) {
        if (!seen.emplace(std::make_pair(e.origin, e.label), 1).second) return false;
    }
    seen.clear();
    for (const LabeledEdge& e : edges) {
        if (!seen.emplace(std::make_pair(e.terminus, -e.label), 1).second) return false;
    }
    return true;
}

bool CoreGraph::is_connected() const {
    std::vector<char> vis(num_vertices, 0);
    std::queue<int> q;
    q.push(basepoint);
    vis[basepoint] = 1;
    int seen = 1;
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (const LabeledEdge& e : edges) {
            const int other = (e.origin == v) ? e.terminus : (e.terminus == v ? e.origin : -1);
            if (other >= 0 && !vis[other]) {
                vis[other] = 1;
                ++seen;
                q.push(other);
            }
        }
    }
    return seen == num_vertices;
}

bool CoreGraph::is_core() const {
    if (!is_folded() || !is_connected()) return false;
    for (int v = 0; v < num_vertices; ++v)
        if (v != basepoint && degree(v) < 2) return false;
    return true;
}

int CoreGraph::out_edge(int v, int label) const {
    for (int i = 0; i < static_cast<int>(edges.size()); ++i)
        if (edges[i].origin == v && edges[i].label == label) return i;
    return -1;
}

int CoreGraph::in_edge(int v, int label) const {
    for (int i = 0; i < static_cast<int>(edges.size()); ++i)
        if (edges[i].terminus == v && edges[i].label == label) return i;
    return -1;
}

CoreGraph CoreGraph::canonical() const {
    std::vector<int> order(num_vertices, -1);
    int next = 0;
    std::queue<int> q;
    order[basepoint] = next++;
    q.push(basepoint);
    while (!q.empty()) {
        const int v = q.front();
        q.pop();
        for (int label = 1; label <= k; ++label) {
            const int out = out_edge(v, label);
            if (out >= 0 && order[edges[out].terminus] < 0) {
                order[edges[out].terminus] = next++;
                q.push(edges[out].terminus);
            }
            const int in = in_edge(v, label);
            if (in >= 0 && order[edges[in].origin] < 0) {
                order[edges[in].origin] = next++;
                q.push(edges[in].origin);
            }
        }
    }
    if (next != num_vertices) throw std::logic_error("canonical: graph is not connected");

    CoreGraph g;
    g.k = k;
    g.num_vertices = num_vertices;
    g.basepoint = 0;
    g.edges.reserve(edges.size());
    for (const LabeledEdge& e : edges)
        g.edges.push_back({order[e.origin], order[e.terminus], e.label});
    std::sort(g.edges.begin(), g.edges.end(), [](const LabeledEdge& a, const LabeledEdge& b) {
        return std::tie(a.origin, a.label, a.terminus) < std::tie(b.origin, b.label, b.terminus);
    });
    return g;
}

std::string CoreGraph::canonical_key() const {
    const CoreGraph c = canonical();
    std::ostringstream os;
    os << c.k << ';' << c.num_vertices << ';';
    for (const LabeledEdge& e : c.edges) os << e.origin << '>' << e.terminus << ':' << e.label << ',';
    return os.str();
}

// ---- VertexPartition ----

VertexPartition VertexPartition::discrete(int n) {
    VertexPartition p;
    p.block_of.resize(n);
    for (int i = 0; i < n; ++i) p.block_of[i] = i;
    return p;
}

VertexPartition VertexPartition::from_blocks(int n, const std::vector<std::vector<int>>& blocks) {
    VertexPartition p;
    p.block_of.assign(n, -1);
    int id = 0;
    for (const auto& block : blocks) {
        if (block.empty()) throw std::invalid_argument("from_blocks: empty block");
        for (int v : block) {
            if (v < 0 || v >= n || p.block_of[v] >= 0)
                throw std::invalid_argument("from_blocks: blocks must partition {0..n-1}");
            p.block_of[v] = id;
        }
        ++id;
    }
    for (int v = 0; v < n; ++v)
        if (p.block_of[v] < 0) throw std::invalid_argument("from_blocks: uncovered vertex");
    // normalise ids to first-use order
    std::map<int, int> remap;
    for (int& b : p.block_of) {
        auto [it, fresh] = remap.emplace(b, static_cast<int>(remap.size()));
        b = it->second;
    }
    return p;
}

VertexPartition VertexPartition::from_permutation_cycles(const Permutation& perm) {
    const int n = perm.size();
    UnionFind uf(n);
    for (int i = 0; i < n; ++i) uf.unite(i, perm(i));
    return partition_from_roots(uf, n);
}

int VertexPartition::block_count() const {
    int mx = -1;
    for (int b : block_of) mx = std::max(mx, b);
    return mx + 1;
}

bool VertexPartition::coarsens(const VertexPartition& finer) const {
    if (finer.size() != size()) return false;
    std::map<int, int> image;
    for (int v = 0; v < size(); ++v) {
        auto [it, fresh] = image.emplace(finer.block_of[v], block_of[v]);
        if (!fresh && it->second != block_of[v]) return false;
    }
    return true;
}

std::vector<std::vector<int>> VertexPartition::blocks() const {
    std::vector<std::vector<int>> out(block_count());
    for (int v = 0; v < size(); ++v) out[block_of[v]].push_back(v);
    return out;
}

// ---- construction ----

CoreGraph bouquet(int k) {
    CoreGraph g;
    g.k = k;
    g.num_vertices = 1;
    g.basepoint = 0;
    for (int label = 1; label <= k; ++label) g.edges.push_back({0, 0, label});
    return g;
}

namespace {

// Remove hanging trees: repeatedly delete degree-<=1 vertices other than the
// basepoint (folding a wedge of cycles can leave such tails only when a
// generator was redundant).
CoreGraph trim(const CoreGraph& g) {
    std::vector<char> vertex_alive(g.num_vertices, 1);
    std::vector<char> edge_alive(g.edges.size(), 1);
    bool changed = true;
    while (changed) {
        changed = false;
        for (int v = 0; v < g.num_vertices; ++v) {
            if (!vertex_alive[v] || v == g.basepoint) continue;
            int deg = 0, last = -1;
            for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
                if (!edge_alive[i]) continue;
                if (g.edges[i].origin == v) ++deg, last = i;
                if (g.edges[i].terminus == v) ++deg, last = i;
            }
            if (deg <= 1) {
                vertex_alive[v] = 0;
                if (last >= 0) edge_alive[last] = 0;
                changed = true;
            }
        }
    }
    CoreGraph out;
    out.k = g.k;
    std::vector<int> renum(g.num_vertices, -1);
    int next = 0;
    for (int v = 0; v < g.num_vertices; ++v)
        if (vertex_alive[v]) renum[v] = next++;
    out.num_vertices = next;
    out.basepoint = renum[g.basepoint];
    for (int i = 0; i < static_cast<int>(g.edges.size()); ++i)
        if (edge_alive[i])
            out.edges.push_back({renum[g.edges[i].origin], renum[g.edges[i].terminus],
                                 g.edges[i].label});
    return out.canonical();
}

}  // namespace

CoreGraph from_words(int k, const std::vector<ReducedWord>& generators) {
    PreGraph pg;
    pg.k = k;
    pg.num_vertices = 1;
    pg.basepoint = 0;
    for (const ReducedWord& w : generators) {
        if (w.alphabet_size > k)
            throw std::invalid_argument("from_words: generator over a larger alphabet");
        const int t = w.length();
        for (int i = 0; i < t; ++i) {
            const int from = (i == 0) ? 0 : pg.num_vertices - 1;
            const int to = (i == t - 1) ? 0 : pg.num_vertices++;
            const Letter& l = w.letters[i];
            if (l.sign > 0)
                pg.edges.push_back({from, to, l.index});
            else
                pg.edges.push_back({to, from, l.index});
        }
    }
    return trim(fold(pg).graph);
}

CoreGraph from_words(int k, const std::vector<std::string>& generator_text) {
    std::vector<ReducedWord> gens;
    gens.reserve(generator_text.size());
    for (const std::string& s : generator_text) gens.push_back(parse_reduced(s, k));
    return from_words(k, gens);
}

FoldResult fold(const PreGraph& g) {
    return fold_impl(g.k, g.num_vertices, g.basepoint, g.edges, nullptr);
}

// ---- queries ----

bool membership(const ReducedWord& w, const CoreGraph& g) {
    int v = g.basepoint;
    for (const Letter& l : w.letters) {
        if (l.index > g.k) return false;
        if (l.sign > 0) {
            const int e = g.out_edge(v, l.index);
            if (e < 0) return false;
            v = g.edges[e].terminus;
        } else {
            const int e = g.in_edge(v, l.index);
            if (e < 0) return false;
            v = g.edges[e].origin;
        }
    }
    return v == g.basepoint;
}

std::optional<GraphMorphism> morphism(const CoreGraph& src, const CoreGraph& dst) {
    if (src.k != dst.k) throw std::invalid_argument("morphism: alphabet mismatch");
    GraphMorphism m;
    m.vertex_map.assign(src.num_vertices, -1);
    m.edge_map.assign(src.edges.size(), -1);
    m.vertex_map[src.basepoint] = dst.basepoint;

    bool progress = true;
    while (progress) {
        progress = false;
        for (int i = 0; i < static_cast<int>(src.edges.size()); ++i) {
            if (m.edge_map[i] >= 0) continue;
            const LabeledEdge& e = src.edges[i];
            int de = -1;
            if (m.vertex_map[e.origin] >= 0)
                de = dst.out_edge(m.vertex_map[e.origin], e.label);
            else if (m.vertex_map[e.terminus] >= 0)
                de = dst.in_edge(m.vertex_map[e.terminus], e.label);
            else
                continue;
            if (de < 0) return std::nullopt;  // no edge to map onto
            const LabeledEdge& f = dst.edges[de];
            if (m.vertex_map[e.origin] >= 0 && m.vertex_map[e.origin] != f.origin)
                return std::nullopt;
            if (m.vertex_map[e.terminus] >= 0 && m.vertex_map[e.terminus] != f.terminus)
                return std::nullopt;
            m.vertex_map[e.origin] = f.origin;
            m.vertex_map[e.terminus] = f.terminus;
            m.edge_map[i] = de;
            progress = true;
        }
    }
    for (int v : m.vertex_map)
        if (v < 0) throw std::logic_error("morphism: source graph is not connected");

    std::vector<char> vhit(dst.num_vertices, 0), ehit(dst.edges.size(), 0);
    vhit[dst.basepoint] = 1;
    for (int v : m.vertex_map) vhit[v] = 1;
    for (int e : m.edge_map) ehit[e] = 1;
    m.surjective = std::all_of(vhit.begin(), vhit.end(), [](char c) { return c != 0; }) &&
                   std::all_of(ehit.begin(), ehit.end(), [](char c) { return c != 0; });
    return m;
}

std::optional<CoreGraph> morphism_image(const CoreGraph& src, const CoreGraph& dst) {
    const auto m = morphism(src, dst);
    if (!m) return std::nullopt;
    std::vector<int> renum(dst.num_vertices, -1);
    int next = 0;
    for (int v = 0; v < dst.num_vertices; ++v) {
        bool hit = false;
        for (int im : m->vertex_map) hit = hit || (im == v);
        if (hit) renum[v] = next++;
    }
    std::vector<char> ehit(dst.edges.size(), 0);
    for (int e : m->edge_map) ehit[e] = 1;

    CoreGraph img;
    img.k = dst.k;
    img.num_vertices = next;
    img.basepoint = renum[dst.basepoint];
    for (int i = 0; i < static_cast<int>(dst.edges.size()); ++i)
        if (ehit[i])
            img.edges.push_back({renum[dst.edges[i].origin], renum[dst.edges[i].terminus],
                                 dst.edges[i].label});
    return img.canonical();
}

FoldResult quotient(const CoreGraph& g, const VertexPartition& p) {
    return fold_impl(g.k, g.num_vertices, g.basepoint, g.edges, &p);
}

FoldResult quotient(const CoreGraph& g, const EdgePartition& p) {
    VertexPartition seed = VertexPartition::discrete(g.num_vertices);
    UnionFind uf(g.num_vertices);
    for (const auto& block : p.blocks) {
        if (block.empty()) throw std::invalid_argument("edge partition: empty block");
        const int first = block.front();
        for (int e : block) {
            if (e < 0 || e >= static_cast<int>(g.edges.size()))
                throw std::invalid_argument("edge partition: index out of range");
            if (g.edges[e].label != g.edges[first].label)
                throw std::invalid_argument("edge partition: block mixes labels");
            uf.unite(g.edges[first].origin, g.edges[e].origin);
            uf.unite(g.edges[first].terminus, g.edges[e].terminus);
        }
    }
    return quotient(g, partition_from_roots(uf, g.num_vertices));
}

std::vector<QuotientInfo> enumerate_quotients(const CoreGraph& g, int vertex_guard) {
    const int n = g.num_vertices;
    if (n > vertex_guard) {
        std::ostringstream os;
        os << "enumerate_quotients: would scan Bell(" << n << ") = " << bell_number(n)
           << " partitions; vertex guard is " << vertex_guard;
        throw GuardError(os.str());
    }

    std::map<std::string, std::pair<CoreGraph, int>> found;  // canonical key -> (graph, min norm)

    // restricted growth strings enumerate every set partition exactly once
    std::vector<int> rgs(n, 0), maxv(n, 0);
    while (true) {
        VertexPartition p;
        p.block_of = rgs;
        const FoldResult q = quotient(g, p);
        const std::string key = q.graph.canonical_key();
        auto [it, fresh] = found.emplace(key, std::make_pair(q.graph, p.norm()));
        if (!fresh) it->second.second = std::min(it->second.second, p.norm());

        int i = n - 1;
        while (i > 0 && rgs[i] == maxv[i - 1] + 1) --i;
        if (i == 0) break;
        ++rgs[i];
        maxv[i] = std::max(maxv[i - 1], rgs[i]);
        for (int j = i + 1; j < n; ++j) {
            rgs[j] = 0;
            maxv[j] = maxv[i];
        }
    }

    std::vector<QuotientInfo> out;
    out.reserve(found.size());
    for (auto& [key, value] : found) out.push_back({std::move(value.first), value.second});
    std::sort(out.begin(), out.end(), [](const QuotientInfo& a, const QuotientInfo& b) {
        return std::make_tuple(a.min_norm, a.graph.rank(), a.graph.canonical_key()) <
               std::make_tuple(b.min_norm, b.graph.rank(), b.graph.canonical_key());
    });
    return out;
}

int x_distance(const CoreGraph& gH, const CoreGraph& gJ, int vertex_guard) {
    const std::string key = gJ.canonical_key();
    for (const QuotientInfo& qi : enumerate_quotients(gH, vertex_guard))
        if (qi.graph.canonical_key() == key) return qi.min_norm;
    throw std::invalid_argument("x_distance: target is not a quotient of the source");
}

bool is_free_factor(const CoreGraph& gH, const CoreGraph& gJ, int vertex_guard) {
    const auto m = morphism(gH, gJ);
    if (!m) throw std::invalid_argument("is_free_factor: no morphism (subgroups not nested)");
    // injective morphism: the source is a subgraph of the target
    std::vector<char> seen(gJ.num_vertices, 0);
    bool injective = true;
    for (int v : m->vertex_map) {
        if (seen[v]) injective = false;
        seen[v] = 1;
    }
    if (injective) return true;
    // otherwise decide inside the intermediate subgroup generated by the
    // image (a free factor of the target by the subgraph rule, and the
    // relation "free factor of the target" descends to it)
    const CoreGraph image = *morphism_image(gH, gJ);
    return x_distance(gH, image, vertex_guard) == image.rank() - gH.rank();
}

DegreeProfile degree_profile(const CoreGraph& g) {
    if (g.edges.empty()) return {0, 0};
    std::vector<char> vertex_alive(g.num_vertices, 1), edge_alive(g.edges.size(), 1);
    auto degree_of = [&](int v) {
        int d = 0;
        for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
            if (!edge_alive[i]) continue;
            if (g.edges[i].origin == v) ++d;
            if (g.edges[i].terminus == v) ++d;
        }
        return d;
    };
    // trim the basepoint string (the graph keeps a cycle, so this halts)
    int cur = g.basepoint;
    while (degree_of(cur) == 1) {
        int other = -1;
        for (int i = 0; i < static_cast<int>(g.edges.size()); ++i) {
            if (!edge_alive[i]) continue;
            if (g.edges[i].origin == cur || g.edges[i].terminus == cur) {
                other = (g.edges[i].origin == cur) ? g.edges[i].terminus : g.edges[i].origin;
                edge_alive[i] = 0;
                break;
            }
        }
        vertex_alive[cur] = 0;
        cur = other;
    }

    DegreeProfile out;
    int alive_vertices = 0, alive_edges = 0, branch = 0;
    for (int v = 0; v < g.num_vertices; ++v) {
        if (!vertex_alive[v]) continue;
        ++alive_vertices;
        const int d = degree_of(v);
        out.max_degree = std::max(out.max_degree, d);
        if (d != 2) ++branch;
    }
    for (char a : edge_alive) alive_edges += a;
    out.topological_edges = alive_edges - alive_vertices + std::max(branch, 1);
    return out;
}

// ---- serialization ----

std::string core_graph_to_json(const CoreGraph& g) {
    const CoreGraph c = g.canonical();
    nlohmann::json j;
    j["alphabet_size"] = c.k;
    j["num_vertices"] = c.num_vertices;
    j["basepoint"] = c.basepoint;
    auto edges = nlohmann::json::array();
    for (const LabeledEdge& e : c.edges)
        edges.push_back(nlohmann::json::array({e.origin, e.terminus, e.label}));
    j["edges"] = std::move(edges);
    return j.dump();
}

CoreGraph core_graph_from_json(const std::string& json_text) {
    const nlohmann::json j = nlohmann::json::parse(json_text);
    CoreGraph g;
    g.k = j.at("alphabet_size").get<int>();
    g.num_vertices = j.at("num_vertices").get<int>();
    g.basepoint = j.at("basepoint").get<int>();
    for (const auto& e : j.at("edges")) {
        const int o = e.at(0).get<int>(), t = e.at(1).get<int>(), l = e.at(2).get<int>();
        if (o < 0 || o >= g.num_vertices || t < 0 || t >= g.num_vertices || l < 1 || l > g.k)
            throw std::invalid_argument("core graph JSON: edge out of range");
        g.edges.push_back({o, t, l});
    }
    if (g.basepoint < 0 || g.basepoint >= g.num_vertices)
        throw std::invalid_argument("core graph JSON: basepoint out of range");
    if (!g.is_folded() || !g.is_connected())
        throw std::invalid_argument("core graph JSON: graph is not a folded connected graph");
    return g.canonical();
}

}  // namespace ramlab
