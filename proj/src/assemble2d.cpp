#include "magspec/assemble2d.hpp"

#include <cmath>
#include <stdexcept>

namespace magspec {

// Core stencil for D_t^2 + (h D_s + a(s,t))^2, expanded as
// h^2 D_s^2 + D_t^2 + a^2 + h(D_s a + a D_s).  The first-order term uses the
// endpoint-averaged link value, which keeps the matrix exactly Hermitian.
static HermitianSparse assemble_core(const std::function<double(double, double)>& a,
                                     double h, const Grid2D& grid) {
    grid.validate();
    if (!(h > 0.0)) throw std::invalid_argument("assemble2d: h <= 0");
    const int nx = grid.nx, ny = grid.ny;
    const double ds = grid.ds(), dt = grid.dt();
    const double ks = h * h / (ds * ds), kt = 1.0 / (dt * dt);
    const bool neum = (grid.bc_t_min == Bc::neumann);

    HermitianBuilder B(grid.size());
    std::vector<double> acol(ny);
    std::vector<double> aprev(ny);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            acol[j] = a(grid.s(i), grid.t(j));
            if (!std::isfinite(acol[j]))
                throw std::invalid_argument("assemble2d: non-finite potential");
        }
        for (int j = 0; j < ny; ++j) {
            int p = grid.index(i, j);
            B.add_diag(p, 2.0 * ks + 2.0 * kt + acol[j] * acol[j]);
            if (j + 1 < ny) {
                double off = -kt;
                if (j == 0 && neum) off = -std::sqrt(2.0) * kt;   // symmetrized mirror row
                B.add_offdiag(p, grid.index(i, j + 1), off);
            }
            if (i > 0) {
                double alink = 0.5 * (aprev[j] + acol[j]);
                B.add_offdiag(grid.index(i - 1, j), p, cplx(-ks, -h * alink / ds));
            }
        }
        std::swap(aprev, acol);
    }
    return B.finish();
}

HermitianSparse assemble_montgomery(int k, const WellProfile& well, double h,
                                    const Grid2D& grid, double momentum_shift) {
    if (k == 0) {
        if (grid.bc_t_min != Bc::neumann || grid.t_min != 0.0)
            throw std::invalid_argument("assemble_montgomery: k = 0 needs Neumann at t = 0");
    } else {
        if (grid.bc_t_min != Bc::dirichlet)
            throw std::invalid_argument("assemble_montgomery: k >= 1 needs all-Dirichlet walls");
    }
    auto a = [&, k, momentum_shift](double s, double t) {
        return momentum_shift - well.gamma(s) * std::pow(t, k + 1) / (k + 1);
    };
    return assemble_core(a, h, grid);
}

HermitianSparse assemble_general(const BivariatePoly& A1, double h, const Grid2D& grid,
                                 double momentum_shift) {
    auto a = [&](double s, double t) { return momentum_shift + A1(s, t); };
    return assemble_core(a, h, grid);
}

HermitianSparse assemble_camel(const std::function<double(double)>& kappa, double zeta0,
                               double h, const Grid2D& grid, double mass_floor,
                               std::vector<int>* kept_nodes) {
    grid.validate();
    if (!(h > 0.0)) throw std::invalid_argument("assemble_camel: h <= 0");
    if (grid.bc_t_min != Bc::neumann || grid.t_min != 0.0)
        throw std::invalid_argument("assemble_camel: tau-domain must be [0, b] with Neumann at 0");
    const int nx = grid.nx, ny = grid.ny;
    const double ds = grid.ds(), dt = grid.dt();

    std::vector<double> kap(nx);
    for (int i = 0; i < nx; ++i) kap[i] = kappa(grid.s(i));

    // weight, gauge field and node activity
    std::vector<double> m(nx * ny), av(nx * ny);
    std::vector<int> id(nx * ny, -1);
    int N = 0;
    for (int i = 0; i < nx; ++i)
        for (int j = 0; j < ny; ++j) {
            double tau = grid.t(j);
            int p = grid.index(i, j);
            m[p] = 1.0 - h * tau * kap[i];
            av[p] = zeta0 - tau + h * kap[i] * tau * tau / 2.0;
            if (m[p] > mass_floor) id[p] = N++;
            else if (mass_floor == 0.0)
                throw std::invalid_argument(
                    "assemble_camel: mass weight not positive on the grid (h, t_max, kappa out of the model strip)");
        }
    if (kept_nodes) {
        kept_nodes->clear();
        for (int p = 0; p < nx * ny; ++p)
            if (id[p] >= 0) kept_nodes->push_back(p);
    }

    HermitianBuilder B(N);
    std::vector<double> mass(N, 0.0);
    for (int i = 0; i < nx; ++i) {
        for (int j = 0; j < ny; ++j) {
            int g = grid.index(i, j);
            int p = id[g];
            if (p < 0) continue;
            double wt = (j == 0) ? 0.5 : 1.0;
            mass[p] = wt * m[g];
            B.add_diag(p, wt * av[g] * av[g] / m[g]);

            // tau edge up from (i, j); midpoint weight, floored under masking
            double me = 1.0 - h * (grid.t(j) + 0.5 * dt) * kap[i];
            if (mass_floor > 0.0) me = std::max(me, mass_floor);
            int qg = (j + 1 < ny) ? id[grid.index(i, j + 1)] : -1;
            B.add_diag(p, me / (dt * dt));
            if (qg >= 0) {
                B.add_diag(qg, me / (dt * dt));
                B.add_offdiag(p, qg, -me / (dt * dt));
            }

            // sigma edge right from (i, j)
            int rg = (i + 1 < nx) ? id[grid.index(i + 1, j)] : -1;
            if (rg >= 0) {
                int g2 = grid.index(i + 1, j);
                double minv = wt * 0.5 * (1.0 / m[g] + 1.0 / m[g2]);
                double kin = minv * h * h / (ds * ds);
                double alink = 0.5 * (av[g] + av[g2]);
                B.add_diag(p, kin);
                B.add_diag(rg, kin);
                B.add_offdiag(p, rg, cplx(-kin, minv * h * alink / ds));
            } else {
                B.add_diag(p, wt * (1.0 / m[g]) * h * h / (ds * ds));
            }
            // left Dirichlet ghost (domain edge or masked neighbor)
            if (i == 0 || id[grid.index(i - 1, j)] < 0)
                B.add_diag(p, wt * (1.0 / m[g]) * h * h / (ds * ds));
        }
    }
    return B.finish(std::move(mass));
}

} // namespace magspec
