#pragma once
#include <vector>

#include "magspec/grid.hpp"
#include "magspec/tridiag.hpp"

namespace magspec {

// Eigenpair of the fiber operator D_tau^2 + (zeta - tau^{k+1}/(k+1))^2 at one zeta.
// The eigenfunction is sampled at the grid nodes and normalized to 1 under
// trapezoid quadrature, with u > 0 at the max-modulus node.
struct BandPoint {
    int k = 0;
    double zeta = 0.0;
    double nu = 0.0;
    Grid1D grid;
    std::vector<double> eigenfunction;
    double residual = 0.0;
};

struct BandMinimum {
    int k = 0;
    double zeta0 = 0.0;
    double nu0 = 0.0;   // band value at the minimum
    double nu2 = 0.0;   // second derivative of the band at the minimum
    BandPoint ground;
};

// Fiber operator matrix.  k = 0 lives on the Neumann half-line; the Neumann
// row is symmetrized (first row/col scaled by sqrt(2)), which preserves the
// spectrum of the mirror-ghost discretization; band_value undoes the scaling
// on the eigenvector.  Outer ends are Dirichlet (ghost zero).
SymTridiag assemble_band_operator(int k, double zeta, const Grid1D& grid);

Grid1D default_band_grid(int k);

BandPoint band_value(int k, double zeta, const Grid1D& grid, double tol = 1e-12);

// Golden-section + parabolic refinement of zeta -> nu(zeta) on [lo, hi];
// nu''(zeta0) by a 5-point stencil with step 1e-3.
BandMinimum band_minimum(int k, const Grid1D& grid, double lo = 0.0, double hi = 2.0,
                         double tol = 1e-10);

// Feynman-Hellmann derivative: nu'(zeta) = 2 int (zeta - tau^{k+1}/(k+1)) u^2 dtau.
double band_derivative_fh(int k, const BandPoint& point);

// C1 = u(0)^2 / 3 from the Neumann boundary sample of the k = 0 ground state.
double moment_C1(const BandPoint& ground);

// Residuals of the four eigenfunction-moment identities at the k = 0 minimum:
//   [0] int (zeta0 - tau) u^2 = 0
//   [1] int (d_zeta u) u = 0
//   [2] 2 int (zeta0 - tau)(d_zeta u) u - (nu''(zeta0)/2 - 1)
//   [3] C1 + int 2 tau (zeta0 - tau)^2 u^2 + tau^2 (zeta0 - tau) u^2 + ... (boundary moment identity)
// d_zeta u is a central difference of sign-aligned eigenfunctions at zeta0 +/- delta.
std::vector<double> moment_check_lemma58(const BandMinimum& min);

// Taylor coefficients nu(zeta0 + x) = sum_j c[j] x^j through the given order,
// by high-order central differencing of the band on the real axis.
std::vector<double> band_taylor(int k, double zeta0, const Grid1D& grid, int order);

// Trapezoid inner product of two node-sampled functions on the grid.
double trapz_inner(const Grid1D& grid, const std::vector<double>& a,
                   const std::vector<double>& b);

} // namespace magspec
