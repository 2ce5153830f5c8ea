#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstdint>
#include <numeric>
#include <vector>

#include "ramlab/random_covers.hpp"
#include "ramlab/spectral.hpp"

using namespace ramlab;

namespace {

CoverGraph identity_cover(const BaseGraph& base, int n) {
    CoverGraph cover;
    cover.base = base;
    cover.n = n;
    cover.sigma.assign(base.edges.size(), Permutation::identity(n));
    return cover;
}

bool multiset_close(std::vector<double> a, std::vector<double> b, double tol) {
    if (a.size() != b.size()) return false;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (std::abs(a[i] - b[i]) > tol) return false;
    }
    return true;
}

// Honest closed-walk count by recursion over vertex sequences, multiplying
// adjacency multiplicities step by step (no matrix algebra involved).
std::int64_t brute_closed_walks(const MultiGraph& g, int t) {
    std::int64_t total = 0;
    for (int start = 0; start < g.num_vertices; ++start) {
        std::vector<std::pair<int, std::int64_t>> frontier{{start, 1}};
        for (int step = 0; step < t; ++step) {
            std::vector<std::pair<int, std::int64_t>> next;
            for (const auto& [v, ways] : frontier) {
                for (int u = 0; u < g.num_vertices; ++u) {
                    if (g.adjacency[v][u] > 0) {
                        next.emplace_back(u, ways * g.adjacency[v][u]);
                    }
                }
            }
            frontier = std::move(next);
        }
        for (const auto& [v, ways] : frontier) {
            if (v == start) total += ways;
        }
    }
    return total;
}

// Walks returning to the root of the d-regular tree, counted on an explicitly
// built truncated tree by an integer dynamic program (independent of the
// distance-from-root recurrence under test).
std::int64_t truncated_tree_walks(int d, int t) {
    std::vector<std::vector<int>> adj(1);
    std::vector<int> depth{0};
    const int max_depth = t / 2 + 1;
    for (std::size_t v = 0; v < adj.size(); ++v) {
        if (depth[v] >= max_depth) continue;
        const int children = (v == 0) ? d : d - 1;
        for (int c = 0; c < children; ++c) {
            const int u = static_cast<int>(adj.size());
            adj.emplace_back();
            depth.push_back(depth[v] + 1);
            adj[v].push_back(u);
            adj[u].push_back(static_cast<int>(v));
        }
    }
    std::vector<std::int64_t> ways(adj.size(), 0);
    ways[0] = 1;
    for (int step = 0; step < t; ++step) {
        std::vector<std::int64_t> next(adj.size(), 0);
        for (std::size_t v = 0; v < adj.size(); ++v) {
            if (ways[v] == 0) continue;
            for (int u : adj[v]) next[u] += ways[v];
        }
        ways = std::move(next);
    }
    return ways[0];
}

}  // namespace

TEST_CASE("symmetric spectra match hand-computed oracles") {
    SUBCASE("identity matrix") {
        Eigen::MatrixXd id = Eigen::MatrixXd::Identity(3, 3);
        const auto spec = symmetric_spectrum(id);
        REQUIRE(spec.size() == 3);
        for (double v : spec) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("complete graph on four vertices") {
        const MultiGraph k4 = base_multigraph(BaseGraph::complete(4));
        const Eigen::MatrixXd a = operator_matrix(k4, OperatorKind::Adjacency);
        const auto spec = symmetric_spectrum(a);
        REQUIRE(spec.size() == 4);
        CHECK(spec[0] == doctest::Approx(3.0).epsilon(1e-12));
        for (int i = 1; i < 4; ++i) {
            CHECK(spec[i] == doctest::Approx(-1.0).epsilon(1e-12));
        }
        // Every reported eigenvalue must be a root of det(A - x I).
        for (double v : {3.0, -1.0}) {
            Eigen::MatrixXd shifted = a - v * Eigen::MatrixXd::Identity(4, 4);
            CHECK(std::abs(shifted.determinant()) < 1e-8);
        }
    }

    SUBCASE("cycles give cosine spectra") {
        for (int n : {5, 8}) {
            const MultiGraph cyc = base_multigraph(BaseGraph::cycle(n));
            const auto spec =
                symmetric_spectrum(operator_matrix(cyc, OperatorKind::Adjacency));
            std::vector<double> expected;
            for (int j = 0; j < n; ++j) {
                expected.push_back(2.0 * std::cos(2.0 * M_PI * j / n));
            }
            CHECK(multiset_close(spec, expected, 1e-9));
        }
    }

    SUBCASE("descending order and symmetry validation") {
        const MultiGraph cyc = base_multigraph(BaseGraph::cycle(7));
        const auto spec =
            symmetric_spectrum(operator_matrix(cyc, OperatorKind::Adjacency));
        for (std::size_t i = 1; i < spec.size(); ++i) {
            CHECK(spec[i - 1] >= spec[i] - 1e-12);
        }
        Eigen::MatrixXd bad(2, 2);
        bad << 0.0, 1.0, 2.0, 0.0;
        CHECK_THROWS_AS(symmetric_spectrum(bad), std::invalid_argument);
    }
}

TEST_CASE("nontrivial eigenvalue of regular multigraphs") {
    SUBCASE("complete graph") {
        const auto lam = lambda_nontrivial(base_multigraph(BaseGraph::complete(4)));
        REQUIRE(lam.has_value());
        CHECK(*lam == doctest::Approx(1.0).epsilon(1e-12));
    }

    SUBCASE("bipartite cycle picks up the negative end") {
        const auto lam = lambda_nontrivial(base_multigraph(BaseGraph::cycle(6)));
        REQUIRE(lam.has_value());
        CHECK(*lam == doctest::Approx(2.0).epsilon(1e-12));
    }

    SUBCASE("disjoint union keeps the duplicated top eigenvalue") {
        MultiGraph two_k4;
        two_k4.num_vertices = 8;
        two_k4.adjacency.assign(8, std::vector<int>(8, 0));
        const MultiGraph k4 = base_multigraph(BaseGraph::complete(4));
        for (int i = 0; i < 4; ++i) {
            for (int j = 0; j < 4; ++j) {
                two_k4.adjacency[i][j] = k4.adjacency[i][j];
                two_k4.adjacency[4 + i][4 + j] = k4.adjacency[i][j];
            }
        }
        const auto lam = lambda_nontrivial(two_k4);
        REQUIRE(lam.has_value());
        CHECK(*lam == doctest::Approx(3.0).epsilon(1e-12));
    }

    SUBCASE("single vertex has no nontrivial eigenvalue") {
        const MultiGraph loops = base_multigraph(BaseGraph::bouquet(2));
        REQUIRE(loops.num_vertices == 1);
        CHECK_FALSE(lambda_nontrivial(loops).has_value());
    }

    SUBCASE("irregular input is rejected") {
        MultiGraph path;
        path.num_vertices = 3;
        path.adjacency = {{0, 1, 0}, {1, 0, 1}, {0, 1, 0}};
        CHECK_THROWS_AS(lambda_nontrivial(path), std::invalid_argument);
    }
}

TEST_CASE("markov operator is a symmetrized similarity of the walk matrix") {
    Rng rng(91);
    const CoverGraph cover = sample_cover(BaseGraph::complete(4), 3, rng);
    const MultiGraph g = cover.to_multigraph();

    const Eigen::MatrixXd q = operator_matrix(g, OperatorKind::Markov);
    const auto q_spec = symmetric_spectrum(q);

    SUBCASE("spectrum lies in [-1, 1] with top value 1 when connected") {
        CHECK(q_spec.front() <= 1.0 + 1e-12);
        CHECK(q_spec.back() >= -1.0 - 1e-12);
        CHECK(q_spec.front() == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("agrees with the row-stochastic matrix D^{-1} B") {
        const int nv = g.num_vertices;
        Eigen::MatrixXd walk(nv, nv);
        for (int i = 0; i < nv; ++i) {
            const double deg = static_cast<double>(g.degree(i));
            for (int j = 0; j < nv; ++j) {
                walk(i, j) = g.adjacency[i][j] / deg;
            }
        }
        Eigen::EigenSolver<Eigen::MatrixXd> solver(walk);
        std::vector<double> walk_spec;
        for (int i = 0; i < nv; ++i) {
            CHECK(std::abs(solver.eigenvalues()[i].imag()) < 1e-9);
            walk_spec.push_back(solver.eigenvalues()[i].real());
        }
        CHECK(multiset_close(q_spec, walk_spec, 1e-9));
    }

    SUBCASE("zero-degree vertices are rejected") {
        MultiGraph isolated;
        isolated.num_vertices = 2;
        isolated.adjacency = {{0, 0}, {0, 0}};
        CHECK_THROWS_AS(operator_matrix(isolated, OperatorKind::Markov),
                        std::invalid_argument);
    }
}

TEST_CASE("trace of adjacency powers counts closed walks") {
    MultiGraph g;
    g.num_vertices = 3;
    g.adjacency = {{2, 2, 1}, {2, 0, 1}, {1, 1, 0}};  // loop + doubled edge

    const Eigen::MatrixXd a = operator_matrix(g, OperatorKind::Adjacency);
    const auto spec = symmetric_spectrum(a);
    for (int t = 1; t <= 5; ++t) {
        const std::int64_t walks = brute_closed_walks(g, t);
        double power_sum = 0.0;
        for (double v : spec) power_sum += std::pow(v, t);
        CHECK(power_sum ==
              doctest::Approx(static_cast<double>(walks)).epsilon(1e-9));
    }

    // Complete graph: 24 closed triangles = 3^3 + 3 * (-1)^3.
    const std::int64_t k4_triangles =
        brute_closed_walks(base_multigraph(BaseGraph::complete(4)), 3);
    CHECK(k4_triangles == 24);
}

TEST_CASE("new spectrum of identity covers repeats the base spectrum") {
    const BaseGraph k4 = BaseGraph::complete(4);
    const CoverGraph cover = identity_cover(k4, 3);
    const auto fresh = new_spectrum(cover, OperatorKind::Adjacency);
    std::vector<double> expected;
    for (int copy = 0; copy < 2; ++copy) {
        expected.insert(expected.end(), {3.0, -1.0, -1.0, -1.0});
    }
    CHECK(multiset_close(fresh, expected, 1e-9));

    const auto top = max_new_eigenvalue(cover, OperatorKind::Adjacency);
    REQUIRE(top.has_value());
    CHECK(*top == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("new and lifted eigenvalues partition the cover spectrum") {
    Rng rng(2026);
    BaseGraph mixed;
    mixed.num_vertices = 2;
    mixed.edges = {{0, 0}, {0, 1}, {0, 1}};
    const std::vector<BaseGraph> bases = {BaseGraph::bouquet(2),
                                          BaseGraph::complete(4), mixed};
    for (const BaseGraph& base : bases) {
        const CoverGraph cover = sample_cover(base, 5, rng);
        const auto base_spec = symmetric_spectrum(
            operator_matrix(base_multigraph(base), OperatorKind::Adjacency));
        for (OperatorKind kind :
             {OperatorKind::Adjacency, OperatorKind::Markov}) {
            const auto full = symmetric_spectrum(
                operator_matrix(cover.to_multigraph(), kind));
            auto combined = new_spectrum(cover, kind);
            const auto lifted = symmetric_spectrum(
                operator_matrix(base_multigraph(base), kind));
            combined.insert(combined.end(), lifted.begin(), lifted.end());
            CHECK(multiset_close(full, combined, 1e-7));
        }
        CHECK(base_spec.size() == static_cast<std::size_t>(base.num_vertices));
    }
}

TEST_CASE("degenerate one-sheet covers have no new eigenvalues") {
    const CoverGraph cover = identity_cover(BaseGraph::bouquet(2), 1);
    CHECK(new_spectrum(cover, OperatorKind::Adjacency).empty());
    CHECK_FALSE(max_new_eigenvalue(cover, OperatorKind::Adjacency).has_value());
    CHECK_FALSE(max_new_eigenvalue(cover, OperatorKind::Markov).has_value());
}

TEST_CASE("adjacency and markov new eigenvalues scale by the degree") {
    Rng rng(7);
    struct Setup {
        BaseGraph base;
        int n;
        double d;
    };
    const std::vector<Setup> setups = {{BaseGraph::bouquet(2), 30, 4.0},
                                       {BaseGraph::parallel_edges(3), 20, 3.0}};
    for (const auto& setup : setups) {
        const CoverGraph cover = sample_cover(setup.base, setup.n, rng);
        const auto lam_a = max_new_eigenvalue(cover, OperatorKind::Adjacency);
        const auto lam_m = max_new_eigenvalue(cover, OperatorKind::Markov);
        REQUIRE(lam_a.has_value());
        REQUIRE(lam_m.has_value());
        CHECK(std::abs(*lam_a - setup.d * *lam_m) < 1e-9);
    }
}

TEST_CASE("cover summary report fields are mutually consistent") {
    Rng rng(55);
    const CoverGraph cover = sample_cover(BaseGraph::bouquet(2), 8, rng);
    const SpectrumReport report = spectrum_report(cover);

    REQUIRE(report.eigenvalues.size() == 8);
    CHECK(report.eigenvalues.front() == doctest::Approx(4.0).epsilon(1e-10));
    CHECK(multiset_close(
        report.eigenvalues,
        symmetric_spectrum(
            operator_matrix(cover.to_multigraph(), OperatorKind::Adjacency)),
        1e-12));
    REQUIRE(report.new_eigenvalues.size() == 7);

    REQUIRE(report.lambda_a_new.has_value());
    REQUIRE(report.lambda_m_new.has_value());
    CHECK(std::abs(*report.lambda_a_new - 4.0 * *report.lambda_m_new) < 1e-9);

    // For a one-vertex base the only old eigenvalue is the degree, so the
    // regular-graph nontrivial eigenvalue and the largest new one coincide.
    REQUIRE(report.lambda_nontrivial.has_value());
    CHECK(std::abs(*report.lambda_nontrivial - *report.lambda_a_new) < 1e-9);
}

TEST_CASE("universal cover radius estimates converge from below") {
    SUBCASE("four-regular bouquet approaches the regular-tree radius") {
        const RhoEstimate rho = rho_universal_cover(BaseGraph::bouquet(2), 100);
        REQUIRE(rho.exact.has_value());
        CHECK(*rho.exact == doctest::Approx(2.0 * std::sqrt(3.0)).epsilon(1e-12));
        CHECK(std::abs(rho.estimate - 2.0 * std::sqrt(3.0)) < 5e-3);
        CHECK(rho.estimate <= *rho.exact + 1e-12);
    }

    SUBCASE("three-regular complete graph") {
        const RhoEstimate rho = rho_universal_cover(BaseGraph::complete(4), 100);
        REQUIRE(rho.exact.has_value());
        CHECK(*rho.exact == doctest::Approx(2.0 * std::sqrt(2.0)).epsilon(1e-12));
        CHECK(std::abs(rho.estimate - 2.0 * std::sqrt(2.0)) < 5e-3);
    }

    SUBCASE("two-regular bases unroll to the infinite path") {
        for (const BaseGraph& base : {BaseGraph::cycle(2), BaseGraph::cycle(5)}) {
            const RhoEstimate rho = rho_universal_cover(base, 100);
            REQUIRE(rho.exact.has_value());
            CHECK(*rho.exact == doctest::Approx(2.0).epsilon(1e-12));
            CHECK(std::abs(rho.estimate - 2.0) < 5e-3);
        }
    }

    SUBCASE("a single edge is its own universal cover") {
        // The two-vertex tree is simply connected, so every ball equals the
        // whole graph and the radius is exactly 1; no closed form is claimed
        // for 1-regular bases.
        const RhoEstimate rho = rho_universal_cover(BaseGraph::single_edge(), 50);
        CHECK_FALSE(rho.exact.has_value());
        CHECK(rho.estimate == doctest::Approx(1.0).epsilon(1e-10));
    }

    SUBCASE("estimates are monotone in the radius") {
        BaseGraph mixed;
        mixed.num_vertices = 2;
        mixed.edges = {{0, 0}, {0, 1}, {0, 1}};
        const std::vector<BaseGraph> bases = {
            BaseGraph::bouquet(2), BaseGraph::cycle(3), BaseGraph::complete(4),
            BaseGraph::single_edge(), mixed};
        for (const BaseGraph& base : bases) {
            double prev = 0.0;
            for (int radius = 1; radius <= 12; ++radius) {
                const double est =
                    rho_universal_cover(base, radius).estimate;
                CHECK(est >= prev - 1e-12);
                prev = est;
            }
        }
    }

    SUBCASE("markov variant scales the regular closed form by the degree") {
        const RhoEstimate rho =
            rho_universal_cover(BaseGraph::bouquet(2), 100, OperatorKind::Markov);
        REQUIRE(rho.exact.has_value());
        CHECK(*rho.exact == doctest::Approx(std::sqrt(3.0) / 2.0).epsilon(1e-12));
        CHECK(std::abs(rho.estimate - std::sqrt(3.0) / 2.0) < 5e-3);
    }

    SUBCASE("invalid radius is rejected") {
        CHECK_THROWS_AS(rho_universal_cover(BaseGraph::bouquet(2), 0),
                        std::invalid_argument);
    }
}

TEST_CASE("regular tree walk counts") {
    SUBCASE("closed forms for short walks") {
        CHECK(tree_closed_walks(4, 0) == BigInt(1));
        CHECK(tree_closed_walks(4, 1) == BigInt(0));
        CHECK(tree_closed_walks(4, 2) == BigInt(4));
        CHECK(tree_closed_walks(3, 2) == BigInt(3));
        CHECK(tree_closed_walks(4, 4) == BigInt(28));  // d(2d - 1)
        CHECK(tree_closed_walks(3, 4) == BigInt(15));
        CHECK(tree_closed_walks(4, 6) == BigInt(232));
        CHECK(tree_closed_walks(1, 2) == BigInt(1));
        CHECK(tree_closed_walks(4, 7) == BigInt(0));
    }

    SUBCASE("degree two gives central binomial coefficients") {
        CHECK(tree_closed_walks(2, 4) == BigInt(6));
        CHECK(tree_closed_walks(2, 6) == BigInt(20));
        CHECK(tree_closed_walks(2, 10) == BigInt(252));
    }

    SUBCASE("agrees with an explicit truncated tree") {
        for (int d : {3, 4}) {
            for (int t = 0; t <= 10; t += 2) {
                CHECK(tree_closed_walks(d, t) ==
                      BigInt(truncated_tree_walks(d, t)));
            }
        }
    }

    SUBCASE("domain validation") {
        CHECK_THROWS_AS(tree_closed_walks(0, 2), std::invalid_argument);
        CHECK_THROWS_AS(tree_closed_walks(3, -1), std::invalid_argument);
    }
}

TEST_CASE("cogrowth bound function") {
    const double sqrt3 = std::sqrt(3.0);

    SUBCASE("flat below the square root threshold") {
        CHECK(cogrowth_g(1.0, 4) == doctest::Approx(2.0 * sqrt3).epsilon(1e-12));
        CHECK(cogrowth_g(1.5, 4) == doctest::Approx(2.0 * sqrt3).epsilon(1e-12));
        CHECK(cogrowth_g(sqrt3, 4) ==
              doctest::Approx(2.0 * sqrt3).epsilon(1e-12));
    }

    SUBCASE("continuous and increasing above the threshold") {
        CHECK(std::abs(cogrowth_g(sqrt3 - 1e-9, 4) -
                       cogrowth_g(sqrt3 + 1e-9, 4)) < 1e-6);
        CHECK(cogrowth_g(2.0, 4) == doctest::Approx(3.5).epsilon(1e-12));
        double prev = cogrowth_g(sqrt3, 4);
        for (double alpha = 1.8; alpha <= 3.0; alpha += 0.2) {
            const double cur = cogrowth_g(alpha, 4);
            CHECK(cur >= prev - 1e-12);
            prev = cur;
        }
    }

    SUBCASE("top of the domain returns the degree") {
        CHECK(cogrowth_g(3.0, 4) == doctest::Approx(4.0).epsilon(1e-12));
        CHECK(cogrowth_g(1.0, 2) == doctest::Approx(2.0).epsilon(1e-12));
    }

    SUBCASE("domain validation") {
        CHECK_THROWS_AS(cogrowth_g(0.5, 4), std::invalid_argument);
        CHECK_THROWS_AS(cogrowth_g(3.5, 4), std::invalid_argument);
    }
}

TEST_CASE("sampled covers stay near the universal cover radius") {
    Rng rng(424242);
    const CoverGraph cover = sample_cover(BaseGraph::bouquet(2), 500, rng);
    const auto lam = max_new_eigenvalue(cover, OperatorKind::Adjacency);
    REQUIRE(lam.has_value());
    const double rho = 2.0 * std::sqrt(3.0);
    CHECK(*lam >= rho - 0.5);
    CHECK(*lam <= 4.0 + 1e-9);
    CHECK(new_spectrum(cover, OperatorKind::Adjacency).size() == 499);
}
