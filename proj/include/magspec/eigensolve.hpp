#pragma once
#include <complex>
#include <cstdint>
#include <vector>

#include "magspec/sparse.hpp"
#include "magspec/tridiag.hpp"

namespace magspec {

struct EigenResult {
    std::vector<double> eigenvalues;                 // ascending
    std::vector<std::vector<cplx>> eigenvectors;     // columns, M-orthonormal
    std::vector<double> residuals;                   // ||A x - lambda M x|| / ||x||_M
    int iterations = 0;
    double shift_used = 0.0;
};

EigenResult tridiag_smallest(const SymTridiag& T, int n_eigs, double tol = 1e-10);

// Shift-invert Lanczos with full reorthogonalization; the shift must lie
// strictly below the smallest eigenvalue (K = A - shift M is factorized once,
// by a sparse complex LDLT).  Generalized (diagonal-mass) problems use the
// M-inner product throughout.
EigenResult sparse_smallest(const HermitianSparse& A, int n_eigs, double shift,
                            double tol = 1e-10, int max_iter = 300,
                            std::uint64_t seed = 12345);

} // namespace magspec
