#pragma once
#include <vector>

namespace magspec {

// Real symmetric tridiagonal matrix: diag[0..n-1], off[0..n-2].
struct SymTridiag {
    std::vector<double> diag;
    std::vector<double> off;
    int dim() const { return static_cast<int>(diag.size()); }
};

// Number of eigenvalues strictly below x (Sturm sequence count).
int sturm_count(const SymTridiag& T, double x);

// k-th smallest eigenvalue (0-based) by bisection, to absolute tolerance tol.
double bisect_eigenvalue(const SymTridiag& T, int k, double tol = 1e-13);

// Eigenvector for a converged eigenvalue by inverse iteration; returns the
// normalized vector (Euclidean) and the 2-norm residual ||Tv - lambda v||.
// Throws on non-convergence.
std::vector<double> inverse_iteration(const SymTridiag& T, double lambda,
                                      double* residual_out = nullptr,
                                      int max_iter = 50);

} // namespace magspec
