#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <algorithm>
#include <complex>
#include <random>

#include <Eigen/Dense>

#include "magspec/assemble2d.hpp"
#include "magspec/eigensolve.hpp"

using namespace magspec;

TEST_CASE("tridiagonal driver: Laplacian spectrum and residuals") {
    const int n = 120;
    const double h = 1.0 / (n + 1);
    SymTridiag T;
    T.diag.assign(n, 2.0 / (h * h));
    T.off.assign(n - 1, -1.0 / (h * h));
    EigenResult r = tridiag_smallest(T, 4, 1e-12);
    for (int j = 0; j < 4; ++j) {
        double exact = (2.0 - 2.0 * std::cos((j + 1) * M_PI / (n + 1))) / (h * h);
        CHECK(r.eigenvalues[j] == doctest::Approx(exact).epsilon(1e-9));
        CHECK(r.residuals[j] < 1e-8);
    }
}

// random Hermitian banded matrix with diagonal mass, dense oracle
static void random_problem(int n, std::uint64_t seed, HermitianSparse& A,
                           Eigen::MatrixXcd& Af, Eigen::MatrixXd& Mf) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    HermitianBuilder B(n);
    Af = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        double d = 4.0 + 2.0 * U(rng);
        B.add_diag(i, d);
        Af(i, i) = d;
        for (int w = 1; w <= 3; ++w)
            if (i + w < n) {
                cplx v(U(rng), U(rng));
                B.add_offdiag(i, i + w, v);
                Af(i, i + w) = v;
                Af(i + w, i) = std::conj(v);
            }
    }
    std::vector<double> mass(n);
    Mf = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
        mass[i] = 0.5 + 1.5 * (0.5 * (U(rng) + 1.0));
        Mf(i, i) = mass[i];
    }
    A = B.finish(std::move(mass));
}

TEST_CASE("shift-invert Lanczos against a dense generalized oracle") {
    const int n = 90;
    HermitianSparse A;
    Eigen::MatrixXcd Af;
    Eigen::MatrixXd Mf;
    random_problem(n, 7u, A, Af, Mf);
    Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXcd> es(Af, Mf.cast<cplx>());
    double shift = A.gershgorin_lower() - 1.0;
    EigenResult r = sparse_smallest(A, 4, shift, 1e-10, 200, 99u);
    for (int j = 0; j < 4; ++j) {
        CHECK(r.eigenvalues[j] == doctest::Approx(es.eigenvalues()[j]).epsilon(1e-9));
        CHECK(r.residuals[j] < 1e-9);
    }
}

TEST_CASE("seeded start vector gives reproducible results") {
    const int n = 60;
    HermitianSparse A;
    Eigen::MatrixXcd Af;
    Eigen::MatrixXd Mf;
    random_problem(n, 3u, A, Af, Mf);
    double shift = A.gershgorin_lower() - 1.0;
    EigenResult a = sparse_smallest(A, 2, shift, 1e-11, 200, 42u);
    EigenResult b = sparse_smallest(A, 2, shift, 1e-11, 200, 42u);
    CHECK(a.eigenvalues[0] == b.eigenvalues[0]);
    CHECK(a.eigenvalues[1] == b.eigenvalues[1]);
    CHECK(a.iterations == b.iterations);
}

TEST_CASE("near-degenerate pair on a slightly unequal box is resolved") {
    // note: a single-vector Krylov method cannot produce the second copy of an
    // exactly degenerate eigenvalue, so the box is made slightly rectangular;
    // the two close modes must both appear, in order, with orthogonal vectors
    Grid2D g;
    g.s_min = 0.0; g.s_max = 1.0; g.t_min = 0.0; g.t_max = 1.0;
    g.nx = 21; g.ny = 24;
    BivariatePoly zero{{{0.0}}};
    HermitianSparse A = assemble_general(zero, 1.0, g);
    EigenResult r = sparse_smallest(A, 3, 0.0, 1e-10, 250, 5u);
    auto mode = [&](int p, int q) {
        double ths = p * M_PI / (g.nx + 1), tht = q * M_PI / (g.ny + 1);
        return (2.0 - 2.0 * std::cos(ths)) / (g.ds() * g.ds()) +
               (2.0 - 2.0 * std::cos(tht)) / (g.dt() * g.dt());
    };
    std::vector<double> modes = {mode(1, 1), mode(1, 2), mode(2, 1), mode(2, 2),
                                 mode(1, 3), mode(3, 1)};
    std::sort(modes.begin(), modes.end());
    for (int j = 0; j < 3; ++j)
        CHECK(r.eigenvalues[j] == doctest::Approx(modes[j]).epsilon(1e-9));
    cplx dot(0.0);
    for (int p = 0; p < A.dim; ++p)
        dot += std::conj(r.eigenvectors[1][p]) * r.eigenvectors[2][p];
    CHECK(std::abs(dot) < 1e-6);
}

TEST_CASE("bad shift inside the spectrum is reported") {
    const int n = 50;
    HermitianSparse A;
    Eigen::MatrixXcd Af;
    Eigen::MatrixXd Mf;
    random_problem(n, 11u, A, Af, Mf);
    CHECK_THROWS(sparse_smallest(A, n + 1, 0.0));
}
