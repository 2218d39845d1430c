#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <complex>

#include "magspec/band1d.hpp"
#include "magspec/quadrature.hpp"
#include "magspec/series.hpp"
#include "magspec/well.hpp"
#include "magspec/wkb.hpp"

using namespace magspec;
using cplxd = std::complex<double>;

// Residual series of gamma^p nu(zeta0 + i gamma^{-p/2} Phi') - gamma0^p nu0,
// with nu represented by its Taylor polynomial at zeta0.
static std::vector<double> back_substitute(int k, const Polynomial& gamma, double s0,
                                           const std::vector<double>& nutay,
                                           const std::vector<cplxd>& phi, int N) {
    const double p = 2.0 / (k + 2);
    PowerSeries g(N);
    {
        Polynomial d = gamma;
        double fact = 1.0;
        for (int j = 0; j <= N; ++j) {
            if (j > 0) { d = d.derivative(); fact *= j; }
            g.c[j] = (j == 0) ? gamma(s0) : d(s0) / fact;
        }
    }
    PowerSeries P(N);
    for (int j = 1; j < static_cast<int>(phi.size()) && j <= N + 1; ++j)
        if (j - 1 <= N) P.c[j - 1] = phi[j] * static_cast<double>(j);
    PowerSeries nu(N);
    for (int j = 0; j <= N && j < static_cast<int>(nutay.size()); ++j) nu.c[j] = nutay[j];
    PowerSeries x = g.pow_real(-p / 2.0) * P * cplxd(0.0, 1.0);
    PowerSeries r = g.pow_real(p) * nu.compose(x);
    r.c[0] -= std::pow(g.c[0].real(), p) * nutay[0];
    std::vector<double> out;
    for (int j = 0; j <= N; ++j) out.push_back(std::abs(r.c[j]));
    return out;
}

TEST_CASE("single-well expansion for gamma = 1 + 4 s^2, k = 1") {
    WellProfile well = WellProfile::analyze(Polynomial({1.0, 0.0, 4.0}), -2.0, 2.0);
    BandMinimum bm = band_minimum(1, default_band_grid(1));
    WkbExpansion w = montgomery_expansion(1, well, bm, 3);
    CHECK(w.lambda0 == doctest::Approx(0.56981830).epsilon(2e-6));
    CHECK(w.lambda1_of_n[1] == doctest::Approx(1.0942989).epsilon(2e-4));
    CHECK(w.lambda1_of_n[2] == doctest::Approx(3.0 * w.lambda1_of_n[1]).epsilon(1e-12));
    CHECK(w.phi2 == doctest::Approx(2.0 * w.lambda1_of_n[1] / bm.nu2).epsilon(1e-12));
    CHECK(w.phi_taylor[2] == doctest::Approx(0.5 * w.phi2));
}

TEST_CASE("eikonal Taylor solution back-substitutes to machine residual") {
    WellProfile well = WellProfile::analyze(Polynomial({1.0, 0.0, 4.0}), -2.0, 2.0);
    Grid1D g = default_band_grid(1);
    BandMinimum bm = band_minimum(1, g);
    auto nutay = band_taylor(1, bm.zeta0, g, 8);
    auto phi = eikonal_taylor(1, well, nutay, 7);
    WkbExpansion w = montgomery_expansion(1, well, bm, 1);
    CHECK(phi[2].real() == doctest::Approx(0.5 * w.phi2).epsilon(1e-6));
    CHECK(std::abs(phi[2].imag()) < 1e-8);
    auto res = back_substitute(1, well.gamma, 0.0, nutay, phi, 6);
    for (int j = 0; j <= 6; ++j) CHECK(res[j] < 1e-8);
}

TEST_CASE("double-well decay weight: zeros, symmetry, direct integral") {
    WellProfile well = WellProfile::analyze(Polynomial({2.0, 0.0, -2.0, 0.0, 1.0}), -2.5, 2.5);
    REQUIRE(well.minima.size() == 2);
    const int n = 201;
    std::vector<double> s(n);
    for (int i = 0; i < n; ++i) s[i] = -2.5 + 5.0 * i / (n - 1);
    AgmonWeight w = agmon_weight(0, well, s, AgmonVariant::double_well, 0.5);

    auto at = [&](double sv) {
        int i = static_cast<int>(std::lround((sv + 2.5) / 5.0 * (n - 1)));
        return w.z_samples[i];
    };
    CHECK(at(1.0) < 1e-10);
    CHECK(at(-1.0) < 1e-10);
    CHECK(at(0.0) > 0.1);
    for (int i = 0; i < n; ++i)
        CHECK(w.z_samples[i] == doctest::Approx(w.z_samples[n - 1 - i]).epsilon(1e-8));
    // outside the gluing region only the near well contributes (p = 1 for k = 0)
    double direct = adaptive_trapezoid(
        [&](double x) { return std::sqrt(well.gamma(x) - well.gamma0); }, 1.0, 1.8);
    CHECK(at(1.8) == doctest::Approx(direct).epsilon(1e-6));
    // monotone outward past the wells
    for (int i = 0; i + 1 < n; ++i)
        if (s[i] > 1.05) CHECK(w.z_samples[i + 1] >= w.z_samples[i] - 1e-12);
}

TEST_CASE("parabola curvature profile") {
    CurvatureProfile cp = curvature_parabola(4.0);
    CHECK(cp.kappa(0.0) == doctest::Approx(8.0));
    CHECK(cp.kappa_max == doctest::Approx(8.0));
    CHECK(cp.kappa(0.7) == doctest::Approx(cp.kappa(-0.7)).epsilon(1e-12));
    CHECK(cp.k2 == doctest::Approx(24.0 * 64.0).epsilon(1e-3));   // 24 c^3
    double k2_out = 0.0;
    auto vals = curvature_profile_parabola(4.0, {0.0, 0.5}, &k2_out);
    CHECK(vals[0] == doctest::Approx(8.0));
    CHECK(k2_out == doctest::Approx(cp.k2));
}

TEST_CASE("two-bump curvature profile") {
    CurvatureProfile cp = curvature_two_bump();
    CHECK(cp.max_locations.size() == 2);
    CHECK(cp.max_locations[1] == doctest::Approx(1.46093).epsilon(1e-4));
    CHECK(cp.kappa(cp.max_locations[1]) == doctest::Approx(8.0).epsilon(1e-10));
    CHECK(cp.kappa(0.0) == doctest::Approx(-4.0).epsilon(1e-10));
    CHECK(cp.k2 > 0.0);
}

TEST_CASE("curvature-well coefficient table") {
    BandMinimum bm = band_minimum(0, default_band_grid(0));
    double C1 = moment_C1(bm.ground);
    CurvatureProfile cp = curvature_parabola(4.0);
    CamelExpansion ce = camel_expansion(bm, C1, cp.kappa_max, cp.k2, 2);
    CHECK(ce.lambda_terms[1].lambda0 == doctest::Approx(0.59010797).epsilon(2e-6));
    CHECK(ce.lambda_terms[1].lambda1 == 0.0);
    CHECK(ce.lambda_terms[1].lambda2 == doctest::Approx(-2.03254).epsilon(1e-3));
    CHECK(ce.lambda_terms[1].lambda3 == doctest::Approx(10.689).epsilon(2e-3));
    CHECK(ce.lambda_terms[2].lambda3 == doctest::Approx(3.0 * ce.lambda_terms[1].lambda3));
}
