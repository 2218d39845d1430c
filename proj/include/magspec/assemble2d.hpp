#pragma once
#include <functional>
#include <vector>

#include "magspec/grid.hpp"
#include "magspec/sparse.hpp"
#include "magspec/well.hpp"

namespace magspec {

// Bivariate polynomial sum c[p][q] s^p t^q.
struct BivariatePoly {
    std::vector<std::vector<double>> c;
    double operator()(double s, double t) const {
        double v = 0.0;
        double sp = 1.0;
        for (size_t p = 0; p < c.size(); ++p) {
            double tp = 1.0;
            for (size_t q = 0; q < c[p].size(); ++q) {
                v += c[p][q] * sp * tp;
                tp *= t;
            }
            sp *= s;
        }
        return v;
    }
};

// D_t^2 + (h D_s - gamma(s) t^{k+1}/(k+1))^2 on the truncated rectangle.
// momentum_shift applies the gauge u -> e^{i shift s / h} u, replacing
// h D_s by h D_s + shift; shift = 0 is the literal operator.  Passing the
// fiber minimizer zeta0 gamma0^{1/(k+2)} removes the ground state's fast
// s-phase, which second-order differences cannot otherwise resolve.
HermitianSparse assemble_montgomery(int k, const WellProfile& well, double h,
                                    const Grid2D& grid, double momentum_shift = 0.0);

// D_t^2 + (h D_s + A1(s,t))^2 with a user-supplied polynomial A1.
HermitianSparse assemble_general(const BivariatePoly& A1, double h, const Grid2D& grid,
                                 double momentum_shift = 0.0);

// Curvilinear boundary-layer operator with mass weight m = 1 - h tau kappa(sigma):
// quadratic form  int m |D_tau u|^2 + m^{-1} |(h D_sigma + zeta0 - tau + h kappa tau^2/2) u|^2,
// assembled against the diagonal mass (generalized problem A x = lambda M x).
// The tau-domain is [0, t_max] with Neumann at tau = 0.  With mass_floor = 0 the
// grid must satisfy m > 0 everywhere (throws otherwise); with mass_floor > 0,
// nodes where m <= mass_floor are removed (Dirichlet), and kept_nodes (if given)
// receives the surviving grid indices i*ny + j in matrix order.
HermitianSparse assemble_camel(const std::function<double(double)>& kappa, double zeta0,
                               double h, const Grid2D& grid, double mass_floor = 0.0,
                               std::vector<int>* kept_nodes = nullptr);

} // namespace magspec
