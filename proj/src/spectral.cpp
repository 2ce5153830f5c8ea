#include "ramlab/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace ramlab {

namespace {

std::vector<double> markov_scaling(const MultiGraph& g) {
    std::vector<double> inv_sqrt(g.num_vertices);
    for (int v = 0; v < g.num_vertices; ++v) {
        const int deg = g.degree(v);
        if (deg <= 0) {
            throw std::invalid_argument(
                "operator_matrix: markov operator needs every vertex degree "
                "positive, vertex " +
                std::to_string(v) + " is isolated");
        }
        inv_sqrt[v] = 1.0 / std::sqrt(static_cast<double>(deg));
    }
    return inv_sqrt;
}

// Orthonormal basis of the fiberwise sum-zero subspace: for each base vertex
// one (n-1)-column Helmert block acting inside its fiber.
Eigen::MatrixXd sum_zero_basis(int base_vertices, int n) {
    const int rows = base_vertices * n;
    const int cols = base_vertices * (n - 1);
    Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(rows, cols);
    for (int v = 0; v < base_vertices; ++v) {
        for (int j = 1; j < n; ++j) {
            const int col = v * (n - 1) + (j - 1);
            const double scale =
                1.0 / std::sqrt(static_cast<double>(j) * (j + 1.0));
            for (int i = 0; i < j; ++i) basis(v * n + i, col) = scale;
            basis(v * n + j, col) = -static_cast<double>(j) * scale;
        }
    }
    return basis;
}

// Directed half-edge structure of a base graph: half-edge 2e traverses edge e
// forward, 2e+1 backward; rev(h) = h ^ 1.
struct HalfEdges {
    std::vector<int> from;
    std::vector<int> to;
    std::vector<std::vector<int>> leaving;  // half-edges departing each vertex

    explicit HalfEdges(const BaseGraph& base) {
        const int m = static_cast<int>(base.edges.size());
        from.resize(2 * m);
        to.resize(2 * m);
        leaving.assign(base.num_vertices, {});
        for (int e = 0; e < m; ++e) {
            const auto [u, v] = base.edges[e];
            from[2 * e] = u;
            to[2 * e] = v;
            from[2 * e + 1] = v;
            to[2 * e + 1] = u;
            leaving[u].push_back(2 * e);
            leaving[v].push_back(2 * e + 1);
        }
    }
};

// Perron eigenvalue of the radius-R ball of the covering tree rooted over
// `root`, found by bisection on the tree transfer recursion
//   g(h, s) = w(h)^2 / (lambda - sum_children g(h', s - 1)),
// where a subtree hangs below each non-backtracking half-edge. The
// predicate "lambda >= Perron" holds iff every denominator stays positive
// and the root sum does not exceed lambda.
double ball_radius_at_root(const HalfEdges& he, const std::vector<double>& w2,
                           int root, int radius, double hi_bound) {
    const int num_half = static_cast<int>(he.from.size());
    std::vector<std::vector<double>> g(
        num_half, std::vector<double>(static_cast<std::size_t>(radius), 0.0));
    // 0 = value usable, 1 = failed (lambda below the Perron value).
    std::vector<std::vector<char>> bad(
        num_half, std::vector<char>(static_cast<std::size_t>(radius), 0));

    const auto predicate = [&](double lambda) {
        for (int slack = 0; slack < radius; ++slack) {
            for (int h = 0; h < num_half; ++h) {
                double below = 0.0;
                bool fail = false;
                if (slack > 0) {
                    for (int next : he.leaving[he.to[h]]) {
                        if (next == (h ^ 1)) continue;
                        if (bad[next][slack - 1]) {
                            fail = true;
                            break;
                        }
                        below += g[next][slack - 1];
                    }
                }
                const double denom = lambda - below;
                if (fail || denom <= 0.0) {
                    bad[h][slack] = 1;
                } else {
                    bad[h][slack] = 0;
                    g[h][slack] = w2[h] / denom;
                }
            }
        }
        double total = 0.0;
        for (int h : he.leaving[root]) {
            if (bad[h][radius - 1]) return false;
            total += g[h][radius - 1];
        }
        return total <= lambda;
    };

    double lo = 0.0;
    double hi = hi_bound;
    for (int iter = 0; iter < 200 && hi - lo > 1e-13; ++iter) {
        const double mid = 0.5 * (lo + hi);
        if (predicate(mid)) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    return hi;
}

}  // namespace

Eigen::MatrixXd operator_matrix(const MultiGraph& g, OperatorKind kind) {
    const int nv = g.num_vertices;
    Eigen::MatrixXd m(nv, nv);
    for (int i = 0; i < nv; ++i) {
        for (int j = 0; j < nv; ++j) {
            m(i, j) = static_cast<double>(g.adjacency[i][j]);
        }
    }
    if (kind == OperatorKind::Markov) {
        const std::vector<double> inv_sqrt = markov_scaling(g);
        for (int i = 0; i < nv; ++i) {
            for (int j = 0; j < nv; ++j) {
                m(i, j) *= inv_sqrt[i] * inv_sqrt[j];
            }
        }
    }
    return m;
}

std::vector<double> symmetric_spectrum(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols()) {
        throw std::invalid_argument("symmetric_spectrum: matrix must be square");
    }
    for (Eigen::Index i = 0; i < m.rows(); ++i) {
        for (Eigen::Index j = i + 1; j < m.cols(); ++j) {
            if (std::abs(m(i, j) - m(j, i)) > 1e-12) {
                throw std::invalid_argument(
                    "symmetric_spectrum: matrix is not symmetric");
            }
        }
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m,
                                                          Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw std::runtime_error("symmetric_spectrum: eigensolver failed");
    }
    std::vector<double> spectrum(solver.eigenvalues().data(),
                                 solver.eigenvalues().data() + m.rows());
    std::reverse(spectrum.begin(), spectrum.end());
    return spectrum;
}

std::optional<double> lambda_nontrivial(const MultiGraph& g) {
    if (!g.is_regular()) {
        throw std::invalid_argument(
            "lambda_nontrivial: graph must be regular");
    }
    if (g.num_vertices <= 1) return std::nullopt;
    const auto spectrum =
        symmetric_spectrum(operator_matrix(g, OperatorKind::Adjacency));
    return std::max(spectrum[1], -spectrum.back());
}

std::vector<double> new_spectrum(const CoverGraph& cover, OperatorKind kind) {
    const MultiGraph total = cover.to_multigraph();
    if (cover.n == 1) return {};
    const Eigen::MatrixXd op = operator_matrix(total, kind);
    const Eigen::MatrixXd basis = sum_zero_basis(cover.base.num_vertices, cover.n);
    Eigen::MatrixXd compressed = basis.transpose() * op * basis;
    // The compression is exactly symmetric; strip floating-point dust so the
    // symmetry gate cannot trip on accumulated rounding.
    compressed = 0.5 * (compressed + compressed.transpose()).eval();
    return symmetric_spectrum(compressed);
}

std::optional<double> max_new_eigenvalue(const CoverGraph& cover,
                                         OperatorKind kind) {
    const auto spectrum = new_spectrum(cover, kind);
    if (spectrum.empty()) return std::nullopt;
    return std::max(std::abs(spectrum.front()), std::abs(spectrum.back()));
}

SpectrumReport spectrum_report(const CoverGraph& cover) {
    SpectrumReport report;
    const MultiGraph total = cover.to_multigraph();
    report.eigenvalues =
        symmetric_spectrum(operator_matrix(total, OperatorKind::Adjacency));
    if (total.is_regular() && total.num_vertices > 1) {
        report.lambda_nontrivial = lambda_nontrivial(total);
    }
    report.new_eigenvalues = new_spectrum(cover, OperatorKind::Adjacency);
    report.lambda_a_new = max_new_eigenvalue(cover, OperatorKind::Adjacency);
    report.lambda_m_new = max_new_eigenvalue(cover, OperatorKind::Markov);
    return report;
}

RhoEstimate rho_universal_cover(const BaseGraph& base, int radius,
                                OperatorKind kind) {
    validate_base(base);
    if (radius < 1) {
        throw std::invalid_argument(
            "rho_universal_cover: radius must be at least 1");
    }

    const HalfEdges he(base);
    std::vector<double> degree(base.num_vertices);
    int max_degree = 0;
    for (int v = 0; v < base.num_vertices; ++v) {
        degree[v] = static_cast<double>(base.degree(v));
        max_degree = std::max(max_degree, base.degree(v));
    }

    std::vector<double> w2(he.from.size(), 1.0);
    double hi_bound = static_cast<double>(max_degree) + 1.0;
    if (kind == OperatorKind::Markov) {
        for (std::size_t h = 0; h < he.from.size(); ++h) {
            if (degree[he.from[h]] <= 0.0 || degree[he.to[h]] <= 0.0) {
                throw std::invalid_argument(
                    "rho_universal_cover: markov operator needs positive "
                    "degrees");
            }
            w2[h] = 1.0 / (degree[he.from[h]] * degree[he.to[h]]);
        }
        hi_bound = 2.0;
    }

    RhoEstimate result;
    for (int root = 0; root < base.num_vertices; ++root) {
        result.estimate = std::max(
            result.estimate, ball_radius_at_root(he, w2, root, radius, hi_bound));
    }

    const bool regular = std::all_of(
        degree.begin(), degree.end(),
        [&](double d) { return d == degree[0]; });
    if (regular && max_degree >= 2) {
        const double rho = 2.0 * std::sqrt(static_cast<double>(max_degree) - 1.0);
        result.exact =
            (kind == OperatorKind::Markov) ? rho / max_degree : rho;
    }
    return result;
}

BigInt tree_closed_walks(int d, int t) {
    if (d < 1) {
        throw std::invalid_argument(
            "tree_closed_walks: degree must be at least 1");
    }
    if (t < 0) {
        throw std::invalid_argument(
            "tree_closed_walks: length must be nonnegative");
    }
    // ways[j] = walks of the current length ending at distance j from the
    // root; stepping away branches d ways at the root and d-1 elsewhere.
    std::vector<BigInt> ways(static_cast<std::size_t>(t) + 2, BigInt(0));
    ways[0] = 1;
    for (int step = 0; step < t; ++step) {
        std::vector<BigInt> next(ways.size(), BigInt(0));
        for (std::size_t j = 0; j + 1 < ways.size(); ++j) {
            if (ways[j] == 0) continue;
            next[j + 1] += ways[j] * BigInt(j == 0 ? d : d - 1);
            if (j > 0) next[j - 1] += ways[j];
        }
        ways = std::move(next);
    }
    return ways[0];
}

double cogrowth_g(double alpha, int d) {
    if (d < 2) {
        throw std::invalid_argument("cogrowth_g: degree must be at least 2");
    }
    if (alpha < 1.0 || alpha > static_cast<double>(d - 1)) {
        throw std::invalid_argument(
            "cogrowth_g: alpha must lie in [1, d - 1]");
    }
    const double threshold = std::sqrt(static_cast<double>(d - 1));
    if (alpha <= threshold) return 2.0 * threshold;
    return static_cast<double>(d - 1) / alpha + alpha;
}

}  // namespace ramlab
