#include "ramlab/expansion_metrics.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>

#include "ramlab/spectral.hpp"

namespace ramlab {

namespace {

bool multigraph_connected(const MultiGraph& g) {
    if (g.num_vertices <= 1) return true;
    std::vector<char> seen(g.num_vertices, 0);
    std::queue<int> frontier;
    frontier.push(0);
    seen[0] = 1;
    int reached = 1;
    while (!frontier.empty()) {
        const int v = frontier.front();
        frontier.pop();
        for (int u = 0; u < g.num_vertices; ++u) {
            if (!seen[u] && g.adjacency[v][u] > 0) {
                seen[u] = 1;
                ++reached;
                frontier.push(u);
            }
        }
    }
    return reached == g.num_vertices;
}

// Shared preconditions: connected, at least two vertices, and the subset
// enumeration (2^|V| raised to `exponent`) within both guards.
void validate_scannable(const MultiGraph& g, int vertex_guard, int exponent,
                        const char* who) {
    if (g.num_vertices < 2) {
        throw std::invalid_argument(std::string(who) +
                                    ": need at least two vertices");
    }
    if (!multigraph_connected(g)) {
        throw std::invalid_argument(std::string(who) +
                                    ": graph must be connected");
    }
    if (g.num_vertices > vertex_guard) {
        throw GuardError(std::string(who) + ": vertex count " +
                         std::to_string(g.num_vertices) +
                         " exceeds the subset guard " +
                         std::to_string(vertex_guard));
    }
    const int bits = g.num_vertices * exponent;
    if (bits >= 63 ||
        (std::uint64_t{1} << bits) > enumeration_guard_limit()) {
        throw GuardError(std::string(who) +
                         ": subset enumeration exceeds the guard limit");
    }
}

// cut[mask] and deg[mask] for every vertex subset, built incrementally from
// the subset with the lowest bit removed.
struct SubsetScan {
    std::vector<long long> internal;  // ordered incidences inside the subset
    std::vector<long long> degree_sum;
    long long total_degree = 0;

    explicit SubsetScan(const MultiGraph& g) {
        const int n = g.num_vertices;
        const std::size_t m = std::size_t{1} << n;
        internal.assign(m, 0);
        degree_sum.assign(m, 0);
        std::vector<long long> degree(n);
        for (int v = 0; v < n; ++v) {
            degree[v] = g.degree(v);
            total_degree += degree[v];
        }
        for (std::size_t mask = 1; mask < m; ++mask) {
            const int v = __builtin_ctzll(mask);
            const std::size_t rest = mask & (mask - 1);
            long long row = g.adjacency[v][v];
            for (std::size_t bits = rest; bits != 0; bits &= bits - 1) {
                row += 2LL * g.adjacency[v][__builtin_ctzll(bits)];
            }
            internal[mask] = internal[rest] + row;
            degree_sum[mask] = degree_sum[rest] + degree[v];
        }
    }

    long long cut(std::size_t mask) const {
        return degree_sum[mask] - internal[mask];
    }
};

}  // namespace

std::pair<double, double> cheeger_and_conductance(const MultiGraph& g,
                                                  int vertex_guard) {
    validate_scannable(g, vertex_guard, 1, "cheeger_and_conductance");
    const SubsetScan scan(g);
    const int n = g.num_vertices;
    const std::size_t m = std::size_t{1} << n;
    double best_h = std::numeric_limits<double>::infinity();
    double best_phi = std::numeric_limits<double>::infinity();
    for (std::size_t mask = 1; mask < m; ++mask) {
        const int size = __builtin_popcountll(mask);
        const long long cut = scan.cut(mask);
        if (2 * size <= n) {
            best_h = std::min(best_h, static_cast<double>(cut) / size);
        }
        const long long vol = scan.degree_sum[mask];
        if (vol > 0 && 2 * vol <= scan.total_degree) {
            best_phi = std::min(best_phi, static_cast<double>(cut) / vol);
        }
    }
    return {best_h, best_phi};
}

long ordered_incidences(const MultiGraph& g, const std::vector<int>& s,
                        const std::vector<int>& t) {
    std::vector<char> in_s(g.num_vertices, 0), in_t(g.num_vertices, 0);
    for (int v : s) {
        if (v < 0 || v >= g.num_vertices) {
            throw std::invalid_argument("ordered_incidences: vertex out of range");
        }
        in_s[v] = 1;
    }
    for (int v : t) {
        if (v < 0 || v >= g.num_vertices) {
            throw std::invalid_argument("ordered_incidences: vertex out of range");
        }
        in_t[v] = 1;
    }
    long total = 0;
    for (int u = 0; u < g.num_vertices; ++u) {
        if (!in_s[u]) continue;
        for (int v = 0; v < g.num_vertices; ++v) {
            if (in_t[v]) total += g.adjacency[u][v];
        }
    }
    return total;
}

ExpansionReport inequality_suite(const MultiGraph& g, int vertex_guard) {
    validate_scannable(g, vertex_guard, 2, "inequality_suite");
    ExpansionReport report;
    std::tie(report.cheeger, report.conductance) =
        cheeger_and_conductance(g, vertex_guard);

    const int n = g.num_vertices;
    const Eigen::MatrixXd adjacency =
        operator_matrix(g, OperatorKind::Adjacency);

    Eigen::MatrixXd laplacian = -adjacency;
    for (int v = 0; v < n; ++v) {
        laplacian(v, v) += static_cast<double>(g.degree(v));
    }
    const auto lap_spec = symmetric_spectrum(laplacian);
    report.laplacian_nu2 = lap_spec[n - 2];  // second smallest

    const auto markov_spec =
        symmetric_spectrum(operator_matrix(g, OperatorKind::Markov));
    report.markov_mu2 = markov_spec[1];

    // Sandwich theorems: a failure can only mean a bug upstream.
    int max_degree = 0;
    for (int v = 0; v < n; ++v) max_degree = std::max(max_degree, g.degree(v));
    const double h = report.cheeger;
    const double phi = report.conductance;
    if (h * h / (2.0 * max_degree) > report.laplacian_nu2 + 1e-9 ||
        report.laplacian_nu2 > 2.0 * h + 1e-9) {
        throw std::logic_error(
            "inequality_suite: laplacian Cheeger sandwich failed");
    }
    const double gap = 1.0 - report.markov_mu2;
    if (phi * phi / 2.0 > gap + 1e-9 || gap > 2.0 * phi + 1e-9) {
        throw std::logic_error(
            "inequality_suite: conductance Cheeger sandwich failed");
    }

    // Mixing scan: Perron data plus the largest remaining |eigenvalue|.
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(adjacency);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("inequality_suite: eigensolver failed");
    }
    const Eigen::VectorXd values = solver.eigenvalues();  // ascending
    const double pf = values[n - 1];
    double lambda = std::max(std::abs(values[n - 2]), std::abs(values[0]));
    const Eigen::VectorXd perron = solver.eigenvectors().col(n - 1);

    const std::size_t m = std::size_t{1} << n;
    std::vector<double> vol(m, 0.0);
    std::vector<std::vector<double>> row_sums(m, std::vector<double>(n, 0.0));
    for (std::size_t mask = 1; mask < m; ++mask) {
        const int v = __builtin_ctzll(mask);
        const std::size_t rest = mask & (mask - 1);
        vol[mask] = vol[rest] + perron[v];
        row_sums[mask] = row_sums[rest];
        for (int u = 0; u < n; ++u) row_sums[mask][u] += adjacency(v, u);
    }
    std::vector<double> sqrt_count(static_cast<std::size_t>(n) + 1, 0.0);
    for (int i = 0; i <= n; ++i) sqrt_count[i] = std::sqrt(double(i));

    double worst = -std::numeric_limits<double>::infinity();
    std::vector<double> crossing(m, 0.0);
    for (std::size_t s = 1; s < m; ++s) {
        const std::vector<double>& ys = row_sums[s];
        const double vol_s = vol[s];
        const double sqrt_s = sqrt_count[__builtin_popcountll(s)];
        for (std::size_t t = 1; t < m; ++t) {
            const int v = __builtin_ctzll(t);
            const double e = crossing[t & (t - 1)] + ys[v];
            crossing[t] = e;
            const double slack =
                std::abs(e - pf * vol_s * vol[t]) -
                lambda * sqrt_s * sqrt_count[__builtin_popcountll(t)];
            worst = std::max(worst, slack);
        }
    }
    report.mixing_max_violation = worst;
    return report;
}

}  // namespace ramlab
