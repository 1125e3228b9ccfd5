#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "rsf/forest.hpp"
#include "rsf/graph.hpp"

namespace rsf {

// Ground-truth computations for verification. Everything here favors
// clarity over scale and is guarded against large inputs; the Monte-Carlo
// path is the production route.

inline constexpr std::size_t kDenseGuard = 5000;
inline constexpr std::size_t kEnumerationGuard = 8;

// Explicitly materialized smoothing kernel K = (Q+L)^-1 Q. Rows sum to 1,
// entries lie in [0,1]; symmetric for uniform q, and K diag(q)^-1 is
// symmetric in general.
struct DenseKernel {
    Eigen::MatrixXd K;
};

Eigen::MatrixXd dense_laplacian(const Graph& g);

// Dense factorization of (Q+L); throws GuardError above kDenseGuard nodes.
DenseKernel dense_kernel(const Graph& g, const QVector& q);

struct ExactSolveResult {
    Signal x;
    std::size_t iterations = 0;
    double relative_residual = 0.0;
    bool converged = false;
};

// Solves (Q+L) x = Q y matrix-free with conjugate gradients built on
// laplacian_apply; never materializes K. Defaults: 1e-10 relative residual,
// iteration cap scaled with n. A non-converged result is returned with its
// residual rather than thrown.
ExactSolveResult exact_smooth(const Graph& g, const QVector& q, const Signal& y,
                              double tolerance = 1e-10, std::size_t max_iterations = 0);

struct VarianceFunctionals {
    double v_tilde; // y^T (I - K^2) y
    double v_bar;   // y^T (K - K^2) y
};

VarianceFunctionals variance_functionals(const Graph& g, const QVector& q,
                                         const Signal& y);

struct ExpectedMse {
    double matrix_form;   // x^T (K - K^2) x + gamma^2 Tr(K - K^2)
    double spectral_form; // ||F x||^2 + gamma^2 Tr(F^2), f(l) = sqrt(q l)/(q + l)
};

// Expected Monte-Carlo error of the tree-mean estimator under Gaussian
// measurement noise of standard deviation gamma, computed along two
// independent routes (dense kernel vs. Laplacian eigendecomposition).
// Uniform q only: the bandpass form is a function of a scalar rate.
ExpectedMse expected_mse_under_noise(const Graph& g, double q, const Signal& x,
                                     double gamma);

struct WeightedForest {
    RootedForest forest;
    double probability;
};

// Exhaustive enumeration of every rooted spanning forest with its exact
// probability: weight prod_{r in roots} q_r * prod_{tree edges} W_ij,
// normalized. Implemented as spanning-tree enumeration of the augmented
// graph (extra node joined to each i with weight q_i) by recursive edge
// contraction/deletion, so each forest appears exactly once.
// Guarded to kEnumerationGuard nodes.
std::vector<WeightedForest> enumerate_forests(const Graph& g, const QVector& q);

} // namespace rsf
