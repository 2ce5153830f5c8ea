#include "ramlab/random_covers.hpp"

#include <json.hpp>

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace ramlab {

// ---- Base graphs ----

int BaseGraph::degree(int v) const {
    int d = 0;
    for (const auto& [u, w] : edges) d += (u == v) + (w == v);
    return d;
}

bool BaseGraph::is_connected() const {
    if (num_vertices <= 0) return false;
    std::vector<char> seen(num_vertices, 0);
    std::vector<int> queue = {0};
    seen[0] = 1;
    for (std::size_t head = 0; head < queue.size(); ++head) {
        const int v = queue[head];
        for (const auto& [a, b] : edges) {
            if (a == v && !seen[b]) seen[b] = 1, queue.push_back(b);
            if (b == v && !seen[a]) seen[a] = 1, queue.push_back(a);
        }
    }
    return std::find(seen.begin(), seen.end(), 0) == seen.end();
}

BaseGraph BaseGraph::bouquet(int loops) {
    BaseGraph g{1, {}};
    for (int i = 0; i < loops; ++i) g.edges.emplace_back(0, 0);
    return g;
}

BaseGraph BaseGraph::cycle(int length) {
    if (length < 1) throw std::invalid_argument("cycle: length must be positive");
    BaseGraph g{length, {}};
    for (int i = 0; i < length; ++i) g.edges.emplace_back(i, (i + 1) % length);
    return g;
}

BaseGraph BaseGraph::complete(int m) {
    BaseGraph g{m, {}};
    for (int u = 0; u < m; ++u)
        for (int v = u + 1; v < m; ++v) g.edges.emplace_back(u, v);
    return g;
}

BaseGraph BaseGraph::single_edge() { return BaseGraph{2, {{0, 1}}}; }

BaseGraph BaseGraph::parallel_edges(int count) {
    if (count < 1) throw std::invalid_argument("parallel_edges: count must be positive");
    BaseGraph g{2, {}};
    for (int i = 0; i < count; ++i) g.edges.emplace_back(0, 1);
    return g;
}

void validate_base(const BaseGraph& base) {
    if (base.num_vertices < 1)
        throw std::invalid_argument("base graph: needs at least one vertex");
    for (const auto& [u, v] : base.edges)
        if (u < 0 || v < 0 || u >= base.num_vertices || v >= base.num_vertices)
            throw std::invalid_argument("base graph: edge endpoint out of range");
    if (!base.is_connected())
        throw std::invalid_argument("base graph: must be connected");
}

// ---- Multigraphs ----

int MultiGraph::degree(int v) const {
    return std::accumulate(adjacency[v].begin(), adjacency[v].end(), 0);
}

bool MultiGraph::is_regular(int d) const {
    for (int v = 0; v < num_vertices; ++v)
        if (degree(v) != d) return false;
    return true;
}

bool MultiGraph::is_regular() const {
    return num_vertices == 0 || is_regular(degree(0));
}

bool MultiGraph::is_simple() const {
    for (int u = 0; u < num_vertices; ++u) {
        if (adjacency[u][u] != 0) return false;
        for (int v = 0; v < num_vertices; ++v)
            if (adjacency[u][v] > 1) return false;
    }
    return true;
}

int loop_count(const MultiGraph& g) {
    int loops = 0;
    for (int v = 0; v < g.num_vertices; ++v) loops += g.adjacency[v][v];
    return loops / 2;
}

MultiGraph base_multigraph(const BaseGraph& base) {
    MultiGraph g;
    g.num_vertices = base.num_vertices;
    g.adjacency.assign(base.num_vertices, std::vector<int>(base.num_vertices, 0));
    for (const auto& [u, v] : base.edges) {
        if (u == v) {
            g.adjacency[u][u] += 2;
        } else {
            g.adjacency[u][v] += 1;
            g.adjacency[v][u] += 1;
        }
    }
    return g;
}

// ---- Covers ----

MultiGraph CoverGraph::to_multigraph() const {
    if (static_cast<int>(sigma.size()) != static_cast<int>(base.edges.size()))
        throw std::logic_error("cover: one permutation per base edge required");
    MultiGraph g;
    g.num_vertices = base.num_vertices * n;
    g.adjacency.assign(g.num_vertices, std::vector<int>(g.num_vertices, 0));
    for (std::size_t e = 0; e < base.edges.size(); ++e) {
        if (sigma[e].size() != n)
            throw std::logic_error("cover: permutation degree must equal sheet count");
        const auto [u, v] = base.edges[e];
        for (int i = 0; i < n; ++i) {
            const int a = vertex_index(u, i);
            const int b = vertex_index(v, sigma[e](i));
            if (a == b) {
                g.adjacency[a][a] += 2;
            } else {
                g.adjacency[a][b] += 1;
                g.adjacency[b][a] += 1;
            }
        }
    }
    return g;
}

CoverGraph sample_cover(const BaseGraph& base, int n, Rng& rng) {
    validate_base(base);
    if (n < 1) throw std::invalid_argument("sample_cover: need n >= 1");
    CoverGraph cover{base, n, {}};
    for (std::size_t e = 0; e < base.edges.size(); ++e)
        cover.sigma.push_back(random_permutation(n, rng));
    return cover;
}

CoverGraph sample_permutation_model(int n, int d, Rng& rng) {
    if (d % 2 != 0)
        throw std::invalid_argument(
            "sample_permutation_model: d must be even; for odd degree use "
            "sample_perm_plus_matching");
    if (d < 2) throw std::invalid_argument("sample_permutation_model: need d >= 2");
    return sample_cover(BaseGraph::bouquet(d / 2), n, rng);
}

namespace {

// Uniform perfect matching of {0..count-1}: shuffle and pair consecutive.
std::vector<std::pair<int, int>> uniform_matching(int count, Rng& rng) {
    std::vector<int> points(count);
    std::iota(points.begin(), points.end(), 0);
    for (int i = count - 1; i > 0; --i)
        std::swap(points[i],
                  points[static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(i) + 1))]);
    std::vector<std::pair<int, int>> pairs;
    for (int t = 0; t < count / 2; ++t) pairs.emplace_back(points[2 * t], points[2 * t + 1]);
    return pairs;
}

void add_undirected(MultiGraph& g, int a, int b) {
    if (a == b) {
        g.adjacency[a][a] += 2;
    } else {
        g.adjacency[a][b] += 1;
        g.adjacency[b][a] += 1;
    }
}

}  // namespace

MultiGraph sample_matching_model(int n, int d, Rng& rng) {
    if (n < 1 || d < 1)
        throw std::invalid_argument("sample_matching_model: need n, d >= 1");
    if ((static_cast<long long>(n) * d) % 2 != 0)
        throw std::invalid_argument("sample_matching_model: d * n must be even");
    MultiGraph g;
    g.num_vertices = n;
    g.adjacency.assign(n, std::vector<int>(n, 0));
    for (const auto& [p, q] : uniform_matching(n * d, rng)) add_undirected(g, p / d, q / d);
    return g;
}

MultiGraph sample_perm_plus_matching(int n, int d, Rng& rng) {
    if (d % 2 == 0)
        throw std::invalid_argument(
            "sample_perm_plus_matching: d must be odd; for even degree use "
            "sample_permutation_model");
    if (n < 2 || n % 2 != 0)
        throw std::invalid_argument("sample_perm_plus_matching: n must be even");
    MultiGraph g;
    g.num_vertices = n;
    g.adjacency.assign(n, std::vector<int>(n, 0));
    for (int p = 0; p < (d - 1) / 2; ++p) {
        const Permutation sigma = random_permutation(n, rng);
        for (int i = 0; i < n; ++i) add_undirected(g, i, sigma(i));
    }
    for (const auto& [a, b] : uniform_matching(n, rng)) add_undirected(g, a, b);
    return g;
}

std::optional<MultiGraph> sample_simple(int n, int d, Rng& rng, int max_attempts) {
    if (max_attempts < 1)
        throw std::invalid_argument("sample_simple: need max_attempts >= 1");
    for (int attempt = 0; attempt < max_attempts; ++attempt) {
        MultiGraph g = sample_matching_model(n, d, rng);
        if (g.is_simple()) return g;
    }
    return std::nullopt;
}

// ---- Lifts ----

int closed_lift_count(const RawWord& w, const CoverGraph& cover) {
    const int k = static_cast<int>(cover.base.edges.size());
    if (w.letters.empty()) return cover.n;
    for (const Letter& l : w.letters)
        if (l.index < 1 || l.index > k)
            throw std::invalid_argument("closed_lift_count: letter beyond edge alphabet");

    // The word must trace a closed path of the base.
    const Letter first = w.letters.front();
    const int start = first.sign > 0 ? cover.base.edges[first.index - 1].first
                                     : cover.base.edges[first.index - 1].second;
    int at = start;
    for (const Letter& l : w.letters) {
        const auto [u, v] = cover.base.edges[l.index - 1];
        if (l.sign > 0) {
            if (at != u) throw std::invalid_argument("closed_lift_count: not a path");
            at = v;
        } else {
            if (at != v) throw std::invalid_argument("closed_lift_count: not a path");
            at = u;
        }
    }
    if (at != start) throw std::invalid_argument("closed_lift_count: path is not closed");

    // Fixed points of the path's permutation word ...
    RawWord word = w;
    word.alphabet_size = k;
    const int by_word = fixed_points(evaluate_word(word, cover.sigma));

    // ... cross-checked by lifting the path sheet by sheet.
    std::vector<Permutation> inverses;
    for (const Permutation& p : cover.sigma) inverses.push_back(p.inverse());
    int by_lifting = 0;
    for (int sheet = 0; sheet < cover.n; ++sheet) {
        int s = sheet;
        for (const Letter& l : w.letters)
            s = l.sign > 0 ? cover.sigma[l.index - 1](s) : inverses[l.index - 1](s);
        by_lifting += (s == sheet);
    }
    if (by_word != by_lifting)
        throw std::logic_error("closed_lift_count: lift/fixed-point mismatch");
    return by_word;
}

// ---- Serialization ----

std::string base_graph_to_json(const BaseGraph& base) {
    nlohmann::json j;
    j["vertices"] = nlohmann::json::array();
    for (int v = 0; v < base.num_vertices; ++v) j["vertices"].push_back(v);
    j["edges"] = nlohmann::json::array();
    for (const auto& [u, v] : base.edges) j["edges"].push_back({u, v});
    return j.dump();
}

BaseGraph base_graph_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    BaseGraph base;
    base.num_vertices = static_cast<int>(j.at("vertices").size());
    for (int v = 0; v < base.num_vertices; ++v)
        if (j.at("vertices")[v].get<int>() != v)
            throw std::invalid_argument("base graph json: vertices must be 0..V-1");
    for (const auto& e : j.at("edges"))
        base.edges.emplace_back(e.at(0).get<int>(), e.at(1).get<int>());
    validate_base(base);
    return base;
}

std::string multigraph_to_json(const MultiGraph& g) {
    nlohmann::json j;
    j["num_vertices"] = g.num_vertices;
    j["adjacency"] = g.adjacency;
    return j.dump();
}

MultiGraph multigraph_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    MultiGraph g;
    g.num_vertices = j.at("num_vertices").get<int>();
    g.adjacency = j.at("adjacency").get<std::vector<std::vector<int>>>();
    if (static_cast<int>(g.adjacency.size()) != g.num_vertices)
        throw std::invalid_argument("multigraph json: adjacency size mismatch");
    for (int u = 0; u < g.num_vertices; ++u) {
        if (static_cast<int>(g.adjacency[u].size()) != g.num_vertices)
            throw std::invalid_argument("multigraph json: adjacency row size mismatch");
        if (g.adjacency[u][u] % 2 != 0)
            throw std::invalid_argument("multigraph json: odd diagonal entry");
        for (int v = 0; v < g.num_vertices; ++v)
            if (g.adjacency[u][v] < 0 || g.adjacency[u][v] != g.adjacency[v][u])
                throw std::invalid_argument("multigraph json: adjacency not symmetric");
    }
    return g;
}

std::string multigraph_to_edge_csv(const MultiGraph& g) {
    std::string out;
    for (int u = 0; u < g.num_vertices; ++u) {
        if (g.adjacency[u][u] != 0)
            out += std::to_string(u) + "," + std::to_string(u) + "," +
                   std::to_string(g.adjacency[u][u] / 2) + "\n";
        for (int v = u + 1; v < g.num_vertices; ++v)
            if (g.adjacency[u][v] != 0)
                out += std::to_string(u) + "," + std::to_string(v) + "," +
                       std::to_string(g.adjacency[u][v]) + "\n";
    }
    return out;
}

std::string cover_to_json(const CoverGraph& cover) {
    nlohmann::json j;
    j["base"] = nlohmann::json::parse(base_graph_to_json(cover.base));
    j["n"] = cover.n;
    j["sigma"] = nlohmann::json::array();
    for (const Permutation& p : cover.sigma) j["sigma"].push_back(p.images);
    return j.dump();
}

CoverGraph cover_from_json(const std::string& text) {
    const nlohmann::json j = nlohmann::json::parse(text);
    CoverGraph cover;
    cover.base = base_graph_from_json(j.at("base").dump());
    cover.n = j.at("n").get<int>();
    if (cover.n < 1) throw std::invalid_argument("cover json: n must be >= 1");
    for (const auto& images : j.at("sigma"))
        cover.sigma.push_back(Permutation{images.get<std::vector<int>>()});
    if (cover.sigma.size() != cover.base.edges.size())
        throw std::invalid_argument("cover json: one permutation per base edge required");
    for (const Permutation& p : cover.sigma)
        if (p.size() != cover.n || !p.is_valid())
            throw std::invalid_argument("cover json: sigma entries must be permutations of 0..n-1");
    return cover;
}

}  // namespace ramlab
