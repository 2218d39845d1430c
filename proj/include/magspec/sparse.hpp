#pragma once
#include <complex>
#include <string>
#include <vector>

#include "magspec/grid.hpp"

namespace magspec {

using cplx = std::complex<double>;

// Sparse Hermitian matrix; only row <= col entries are stored (once), so the
// implied full matrix equals its conjugate transpose by construction.
// Diagonal entries must be real.  Optional positive diagonal mass turns
// eigenproblems into A x = lambda M x.
struct HermitianSparse {
    struct Entry {
        int row, col;
        cplx value;
    };
    int dim = 0;
    std::vector<Entry> entries;
    std::vector<double> mass;   // empty means identity

    void validate() const;
    double gershgorin_lower() const;
};

// Accumulates stencil contributions; duplicate (row, col) pairs are merged.
// Off-diagonal additions with row > col are conjugated into the upper triangle.
class HermitianBuilder {
public:
    explicit HermitianBuilder(int dim) : dim_(dim), diag_(dim, 0.0) {}

    void add_diag(int i, double v) { diag_[i] += v; }
    void add_offdiag(int row, int col, cplx v);
    HermitianSparse finish(std::vector<double> mass = {});

private:
    int dim_;
    std::vector<double> diag_;
    std::vector<HermitianSparse::Entry> offs_;
};

// Coordinate-text export ("row col re im", 0-based) with a JSON sidecar
// {dim, h, k, grid, bc}; a mass vector, when present, goes to <path>.mass.
void write_matrix(const HermitianSparse& A, const std::string& path, double h, int k,
                  const Grid2D& grid);

} // namespace magspec
