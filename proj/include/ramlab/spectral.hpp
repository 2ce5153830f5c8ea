#pragma once
// Eigenvalue machinery: dense symmetric spectra, non-trivial and new
// eigenvalue extraction for covers, universal-cover spectral radius,
// regular-tree walk counts, and the cogrowth bound function.
#include <Eigen/Dense>

#include <optional>
#include <vector>

#include "ramlab/common.hpp"
#include "ramlab/random_covers.hpp"

namespace ramlab {

enum class OperatorKind { Adjacency, Markov };

// Adjacency matrix (loops count 2 on the diagonal) or the symmetrized Markov
// operator D^{-1/2} B D^{-1/2}. Markov requires every degree positive.
Eigen::MatrixXd operator_matrix(const MultiGraph& g, OperatorKind kind);

// All eigenvalues of a symmetric matrix, descending. Input must be symmetric
// entrywise within 1e-12 (invalid_argument otherwise); the solve is the
// deterministic Householder-tridiagonalization path of Eigen's self-adjoint
// solver.
std::vector<double> symmetric_spectrum(const Eigen::MatrixXd& m);

// max(lambda_2, -lambda_min) of the adjacency spectrum of a d-regular
// multigraph; absent for a single-vertex graph. Throws if g is not regular.
std::optional<double> lambda_nontrivial(const MultiGraph& g);

// Spectrum (descending) of the operator compressed to the fiberwise sum-zero
// subspace W = {f : sum_i f(v,i) = 0 for every base vertex v}, computed in an
// explicit per-fiber orthonormal (Helmert) basis of dimension (n-1)|V(base)|.
// Empty when n = 1.
std::vector<double> new_spectrum(const CoverGraph& cover, OperatorKind kind);

// Largest new eigenvalue in absolute value; absent when n = 1.
std::optional<double> max_new_eigenvalue(const CoverGraph& cover, OperatorKind kind);

// Bundled per-cover summary used by the CLI.
struct SpectrumReport {
    std::vector<double> eigenvalues;      // full adjacency spectrum, descending
    std::optional<double> lambda_nontrivial;  // regular covers only
    std::vector<double> new_eigenvalues;  // adjacency, descending
    std::optional<double> lambda_a_new;
    std::optional<double> lambda_m_new;
};
SpectrumReport spectrum_report(const CoverGraph& cover);

// Spectral radius of the universal cover: Perron eigenvalue of the radius-R
// ball of the covering tree, maximized over root choices. The estimate is
// monotone nondecreasing in R and converges to the true value from below at
// an O(1/R^2) rate. For d-regular bases with d >= 2 the closed form
// (2 sqrt(d-1) for adjacency, divided by d for Markov) is reported alongside;
// a 1-regular base is its own universal cover and gets no closed form.
struct RhoEstimate {
    double estimate = 0.0;
    std::optional<double> exact;
};
RhoEstimate rho_universal_cover(const BaseGraph& base, int radius = 100,
                                OperatorKind kind = OperatorKind::Adjacency);

// Closed walks of length t at the root of the d-regular infinite tree
// (distance-from-root dynamic program); 0 for odd t.
BigInt tree_closed_walks(int d, int t);

// The cogrowth upper-bound function: 2 sqrt(d-1) for alpha <= sqrt(d-1),
// alpha + (d-1)/alpha above. Domain 1 <= alpha <= d-1.
double cogrowth_g(double alpha, int d);

}  // namespace ramlab
