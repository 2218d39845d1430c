#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "magspec/band1d.hpp"
#include "magspec/tridiag.hpp"

using namespace magspec;

TEST_CASE("k = 0 band minimum: location, value, curvature") {
    BandMinimum bm = band_minimum(0, default_band_grid(0));
    CHECK(bm.zeta0 == doctest::Approx(0.76818202).epsilon(2e-5));
    CHECK(bm.nu0 == doctest::Approx(0.59010797).epsilon(2e-6));
    CHECK(bm.nu2 == doctest::Approx(1.17104750).epsilon(2e-4));
    CHECK(std::abs(band_derivative_fh(0, bm.ground)) < 1e-5);
}

TEST_CASE("k = 0 boundary moment and ground state trace") {
    BandMinimum bm = band_minimum(0, default_band_grid(0));
    double C1 = moment_C1(bm.ground);
    CHECK(C1 == doctest::Approx(0.25406719).epsilon(1e-4));
    // u(0)^2 = 3 C1 for the normalized ground state
    CHECK(bm.ground.eigenfunction[0] == doctest::Approx(std::sqrt(3.0 * C1)).epsilon(1e-8));
    CHECK(bm.ground.eigenfunction[0] == doctest::Approx(0.873043).epsilon(5e-4));

    auto res = moment_check_lemma58(bm);
    REQUIRE(res.size() == 4);
    for (double r : res) CHECK(std::abs(r) < 2e-4);
}

TEST_CASE("k = 1 band minimum matches the frozen values") {
    BandMinimum bm = band_minimum(1, default_band_grid(1));
    CHECK(bm.zeta0 == doctest::Approx(0.34675764).epsilon(5e-5));
    CHECK(bm.nu0 == doctest::Approx(0.56981830).epsilon(2e-6));
    CHECK(bm.nu2 == doctest::Approx(1.57614737).epsilon(2e-4));
}

TEST_CASE("Feynman-Hellmann derivative equals the finite difference off-minimum") {
    Grid1D g = default_band_grid(1);
    BandPoint bp = band_value(1, 0.6, g);
    double fh = band_derivative_fh(1, bp);
    double d = 1e-4;
    double fd = (band_value(1, 0.6 + d, g).nu - band_value(1, 0.6 - d, g).nu) / (2 * d);
    CHECK(fh == doctest::Approx(fd).epsilon(1e-5));
}

TEST_CASE("symmetrized Neumann row reproduces the mirror spectrum") {
    // Half-line operator with even-mirrored potential vs the explicit full-line
    // operator: the Neumann states coincide.
    Grid1D gh = Grid1D::half_line(10.0, 401);
    const double zeta = 0.8;
    SymTridiag Th = assemble_band_operator(0, zeta, gh);
    CHECK(Th.off[0] == doctest::Approx(-std::sqrt(2.0) / (gh.spacing() * gh.spacing())));
    double lam_half = bisect_eigenvalue(Th, 0, 1e-12);

    const int n = 801;   // same spacing, [-10, 10]
    const double h = gh.spacing();
    SymTridiag Tf;
    Tf.diag.resize(n);
    Tf.off.assign(n - 1, -1.0 / (h * h));
    for (int i = 0; i < n; ++i) {
        double tau = -10.0 + i * h;
        double v = zeta - std::abs(tau);
        Tf.diag[i] = 2.0 / (h * h) + v * v;
    }
    double lam_full = bisect_eigenvalue(Tf, 0, 1e-12);
    CHECK(lam_half == doctest::Approx(lam_full).epsilon(1e-10));
}

TEST_CASE("band Taylor data is consistent with the minimum") {
    Grid1D g = default_band_grid(0);
    BandMinimum bm = band_minimum(0, g);
    auto c = band_taylor(0, bm.zeta0, g, 6);
    REQUIRE(c.size() >= 7);
    CHECK(c[0] == doctest::Approx(bm.nu0).epsilon(1e-8));
    CHECK(std::abs(c[1]) < 1e-6);
    CHECK(2.0 * c[2] == doctest::Approx(bm.nu2).epsilon(1e-4));
}

TEST_CASE("eigenpair residual is small relative to the matrix scale") {
    BandPoint bp = band_value(1, 0.5, default_band_grid(1));
    CHECK(bp.residual < 1e-10);
    // trapezoid normalization
    CHECK(trapz_inner(bp.grid, bp.eigenfunction, bp.eigenfunction) ==
          doctest::Approx(1.0).epsilon(1e-12));
}
