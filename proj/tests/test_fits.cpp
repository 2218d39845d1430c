#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "magspec/fits.hpp"

using namespace magspec;

TEST_CASE("basis fit recovers an exact quadratic") {
    std::vector<double> x = {0.1, 0.2, 0.3, 0.5, 0.8, 1.0};
    std::vector<double> y;
    for (double v : x) y.push_back(1.5 - 2.0 * v + 0.75 * v * v);
    FitResult f = fit_basis(x, y,
                            {[](double) { return 1.0; }, [](double v) { return v; },
                             [](double v) { return v * v; }});
    CHECK(f.params[0] == doctest::Approx(1.5).epsilon(1e-12));
    CHECK(f.params[1] == doctest::Approx(-2.0).epsilon(1e-12));
    CHECK(f.params[2] == doctest::Approx(0.75).epsilon(1e-10));
    CHECK(f.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(f.window_lo == 0.1);
    CHECK(f.window_hi == 1.0);
}

TEST_CASE("power-law fit in log-log coordinates") {
    std::vector<double> x = {0.05, 0.1, 0.2, 0.4, 0.8};
    std::vector<double> y;
    for (double v : x) y.push_back(3.0 * std::pow(v, 2.5));
    FitResult f = fit_power(x, y);
    CHECK(f.model == "power-law");
    CHECK(f.params[0] == doctest::Approx(3.0).epsilon(1e-10));
    CHECK(f.params[1] == doctest::Approx(2.5).epsilon(1e-10));
}

TEST_CASE("exponential rate fit, both h powers") {
    std::vector<double> h = {0.2, 0.15, 0.12, 0.1, 0.08};
    std::vector<double> g1, ghalf;
    for (double v : h) {
        g1.push_back(2.0 * std::exp(-1.3 / v));
        ghalf.push_back(0.7 * std::exp(-5.4 / std::sqrt(v)));
    }
    FitResult a = fit_exp_rate(h, g1, 1.0);
    CHECK(a.params[0] == doctest::Approx(2.0).epsilon(1e-9));
    CHECK(a.params[1] == doctest::Approx(1.3).epsilon(1e-9));
    FitResult b = fit_exp_rate(h, ghalf, 0.5);
    CHECK(b.params[0] == doctest::Approx(0.7).epsilon(1e-9));
    CHECK(b.params[1] == doctest::Approx(5.4).epsilon(1e-9));
}

TEST_CASE("insufficient or invalid data is rejected") {
    std::vector<double> x = {0.1, 0.2, 0.3};
    std::vector<double> y = {1.0, 2.0, 3.0};
    CHECK_THROWS_WITH(fit_power(x, y), doctest::Contains("insufficient range"));
    CHECK_THROWS(fit_basis(x, y, {[](double) { return 1.0; }}));
    std::vector<double> x4 = {0.1, 0.2, 0.3, 0.4};
    std::vector<double> bad = {1.0, -2.0, 3.0, 4.0};
    CHECK_THROWS(fit_power(x4, bad));
    CHECK_THROWS(fit_exp_rate(x4, bad, 1.0));
}

TEST_CASE("noisy data keeps a sensible r_squared") {
    std::vector<double> x, y;
    for (int i = 0; i < 12; ++i) {
        double v = 0.1 + 0.05 * i;
        x.push_back(v);
        y.push_back(2.0 * v + ((i % 2) ? 0.01 : -0.01));
    }
    FitResult f = fit_basis(x, y, {[](double) { return 1.0; }, [](double v) { return v; }});
    CHECK(f.r_squared > 0.99);
    CHECK(f.r_squared <= 1.0);
}
