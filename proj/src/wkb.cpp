#include "magspec/wkb.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "magspec/quadrature.hpp"
#include "magspec/series.hpp"

namespace magspec {

using cplx = std::complex<double>;

static const WellMinimum& single_min(const WellProfile& well, const char* who) {
    if (well.minima.size() != 1)
        throw std::invalid_argument(std::string(who) + ": expected a single-minimum profile");
    return well.minima.front();
}

WkbExpansion montgomery_expansion(int k, const WellProfile& well, const BandMinimum& band,
                                  int n_max) {
    if (band.k != k) throw std::invalid_argument("montgomery_expansion: band/k mismatch");
    const WellMinimum& m = single_min(well, "montgomery_expansion");
    if (!(m.second >= 0.0)) throw std::invalid_argument("montgomery_expansion: gamma''(0) < 0");
    if (!(band.nu2 > 0.0)) throw std::invalid_argument("montgomery_expansion: nu''(zeta0) <= 0");

    const double p = 2.0 / (k + 2);
    const double g0 = m.value;
    WkbExpansion w;
    w.k = k;
    w.lambda0 = std::pow(g0, p) * band.nu0;
    w.phi2 = std::pow(g0, 1.0 / (k + 2)) *
             std::sqrt(p * m.second * band.nu0 / (g0 * band.nu2));
    w.phi_taylor = {0.0, 0.0, 0.5 * w.phi2};
    for (int n = 1; n <= n_max; ++n)
        w.lambda1_of_n[n] = band.nu2 * w.phi2 * (n - 0.5);
    return w;
}

// Taylor coefficients of gamma about the well location s0.
static std::vector<double> poly_taylor_at(const Polynomial& poly, double s0, int order) {
    std::vector<double> out;
    Polynomial d = poly;
    double fact = 1.0;
    for (int j = 0; j <= order; ++j) {
        if (j > 0) {
            d = d.derivative();
            fact *= j;
        }
        out.push_back((j == 0 ? poly(s0) : d(s0) / fact));
    }
    return out;
}

// Residual series of the eikonal equation for a trial Phi' series P.
static PowerSeries eikonal_residual(double p, const std::vector<double>& gtay,
                                    const std::vector<double>& nutay,
                                    const PowerSeries& P, int N) {
    PowerSeries g(N);
    for (int j = 0; j <= N && j < static_cast<int>(gtay.size()); ++j) g.c[j] = gtay[j];
    PowerSeries gp = g.pow_real(p);
    PowerSeries gmh = g.pow_real(-p / 2.0);   // gamma^{-1/(k+2)}
    PowerSeries x = gmh * P * cplx(0.0, 1.0); // i gamma^{-1/(k+2)} Phi'
    PowerSeries nu(N);
    for (int j = 0; j <= N && j < static_cast<int>(nutay.size()); ++j) nu.c[j] = nutay[j];
    PowerSeries r = gp * nu.compose(x);
    r.c[0] -= std::pow(gtay[0], p) * nutay[0];
    return r;
}

std::vector<cplx> eikonal_taylor(int k, const WellProfile& well,
                                 const std::vector<double>& band_taylor, int order) {
    if (static_cast<int>(band_taylor.size()) <= order)
        throw std::invalid_argument("eikonal_taylor: band Taylor data shorter than requested order");
    if (!(band_taylor.size() > 2 && band_taylor[2] > 0.0))
        throw std::invalid_argument("eikonal_taylor: nu'' <= 0");
    const WellMinimum& m = single_min(well, "eikonal_taylor");
    const double p = 2.0 / (k + 2);
    const int N = order;
    std::vector<double> gtay = poly_taylor_at(well.gamma, m.s, N);
    if (std::abs(gtay[1]) > 1e-10 * std::abs(gtay[0]))
        throw std::invalid_argument("eikonal_taylor: profile not critical at the well");
    if (!(gtay[2] > 0.0))
        throw std::invalid_argument("eikonal_taylor: degenerate well (branch selection ambiguous)");

    // P = Phi' = a_1 s + ... + a_{order-1} s^{order-1}; the branch with a_1 > 0.
    PowerSeries P(N);
    double a1 = std::pow(gtay[0], (p - 1.0) / 2.0) *
                std::sqrt(p * 2.0 * gtay[2] * band_taylor[0] / (2.0 * band_taylor[2]));
    if (N >= 1) P.c[1] = a1;
    // Each further coefficient enters the s^{m+1} residual coefficient linearly.
    for (int m2 = 2; m2 <= N - 1; ++m2) {
        PowerSeries r0 = eikonal_residual(p, gtay, band_taylor, P, N);
        PowerSeries P1 = P;
        P1.c[m2] += 1.0;
        PowerSeries r1 = eikonal_residual(p, gtay, band_taylor, P1, N);
        cplx denom = r1.c[m2 + 1] - r0.c[m2 + 1];
        if (std::abs(denom) == 0.0)
            throw std::runtime_error("eikonal_taylor: singular order-by-order step");
        P.c[m2] = -r0.c[m2 + 1] / denom;
    }
    std::vector<cplx> phi(N + 1, cplx(0.0));
    for (int j = 1; j <= N; ++j) phi[j] = P.c[j - 1] / static_cast<double>(j);
    return phi;
}

static double smooth_step_down(double x) {
    // 1 for x <= 0, 0 for x >= 1, C-infinity exp(-1/x) gluing in between
    if (x <= 0.0) return 1.0;
    if (x >= 1.0) return 0.0;
    double a = std::exp(-1.0 / (1.0 - x));
    double b = std::exp(-1.0 / x);
    return a / (a + b);
}

AgmonWeight agmon_weight(int k, const WellProfile& well, const std::vector<double>& s_grid,
                         AgmonVariant variant, double delta) {
    const double p = 2.0 / (k + 2);
    const double g0p = std::pow(well.gamma0, p);
    auto radicand = [&](double s) {
        double r = std::pow(well.gamma(s), p) - g0p;
        if (r < -1e-10) throw std::invalid_argument("agmon_weight: gamma dips below gamma0");
        return std::sqrt(std::max(0.0, r));
    };

    AgmonWeight w;
    w.s_samples = s_grid;
    w.z_samples.resize(s_grid.size());
    for (const auto& m : well.minima) w.wells.push_back(m.s);

    if (variant == AgmonVariant::single) {
        double s0 = single_min(well, "agmon_weight").s;
        for (size_t i = 0; i < s_grid.size(); ++i)
            w.z_samples[i] = std::abs(adaptive_trapezoid(radicand, s0, s_grid[i]));
        return w;
    }

    if (well.minima.size() != 2)
        throw std::invalid_argument("agmon_weight: double variant needs two minima");
    double sm = well.minima[0].s, sp = well.minima[1].s;
    if (sm > sp) std::swap(sm, sp);
    if (std::abs(sm + sp) > 1e-8)
        throw std::invalid_argument("agmon_weight: double variant needs symmetric minima");
    if (!(delta > 0.0 && delta < sp))
        throw std::invalid_argument("agmon_weight: delta outside (0, s_+)");
    auto chi_minus = [&](double s) { return smooth_step_down((s - delta / 2) / (delta / 2)); };
    auto chi_plus = [&](double s) { return smooth_step_down((-s - delta / 2) / (delta / 2)); };
    for (size_t i = 0; i < s_grid.size(); ++i) {
        double s = s_grid[i];
        double zl = std::abs(adaptive_trapezoid(radicand, sm, s));
        double zr = std::abs(adaptive_trapezoid(radicand, sp, s));
        w.z_samples[i] = chi_minus(s) * zl + chi_plus(s) * zr;
    }
    return w;
}

CamelExpansion camel_expansion(const BandMinimum& band0, double C1, double kappa_max,
                               double k2, int n_max,
                               const CurvatureProfile* kappa,
                               const std::vector<double>& phi_grid) {
    if (band0.k != 0) throw std::invalid_argument("camel_expansion: k = 0 band data required");
    if (!(k2 > 0.0) || !(kappa_max > 0.0))
        throw std::invalid_argument("camel_expansion: k2 and kappa_max must be positive");
    CamelExpansion ce;
    ce.theta0 = band0.nu0;
    ce.C1 = C1;
    ce.kappa_max = kappa_max;
    ce.k2 = k2;
    for (int n = 1; n <= n_max; ++n) {
        CamelExpansion::Terms t;
        t.lambda0 = band0.nu0;
        t.lambda1 = 0.0;
        t.lambda2 = -C1 * kappa_max;
        t.lambda3 = (2 * n - 1) * C1 * std::pow(band0.nu0, 0.25) * std::sqrt(1.5 * k2);
        ce.lambda_terms[n] = t;
    }
    if (kappa != nullptr && !phi_grid.empty()) {
        double k0 = kappa->kappa(0.0);
        auto f = [&](double sig) {
            double r = k0 - kappa->kappa(sig);
            if (r < -1e-8) throw std::invalid_argument("camel_expansion: kappa exceeds kappa(0)");
            return std::sqrt(std::max(0.0, r));
        };
        double amp = std::sqrt(2.0 * C1 / band0.nu2);
        ce.phi_grid = phi_grid;
        for (double sig : phi_grid)
            ce.phi_sigma.push_back(amp * std::abs(adaptive_trapezoid(f, 0.0, sig)));
    }
    return ce;
}

CurvatureProfile curvature_parabola(double c) {
    if (!(c > 0.0)) throw std::invalid_argument("curvature_parabola: c > 0 required");
    auto arclen = [c](double x) {
        return 0.5 * x * std::sqrt(1.0 + 4 * c * c * x * x) + std::asinh(2 * c * x) / (4 * c);
    };
    auto x_of_sigma = [c, arclen](double sig) {
        double sgn = (sig < 0) ? -1.0 : 1.0;
        double s = std::abs(sig);
        if (s == 0.0) return 0.0;
        double x = s;   // arclen(x) >= x, so the root is in (0, s]
        for (int it = 0; it < 100; ++it) {
            double g = arclen(x) - s;
            double dg = std::sqrt(1.0 + 4 * c * c * x * x);
            double step = g / dg;
            x -= step;
            if (std::abs(step) < 1e-14 * (1.0 + std::abs(x))) break;
        }
        return sgn * x;
    };
    CurvatureProfile cp;
    cp.kappa = [c, x_of_sigma](double sig) {
        double x = x_of_sigma(sig);
        return 2 * c / std::pow(1.0 + 4 * c * c * x * x, 1.5);
    };
    cp.kappa_max = 2 * c;
    cp.max_locations = {0.0};
    const double d = 1e-2;
    cp.k2 = -(-cp.kappa(2 * d) + 16 * cp.kappa(d) - 30 * cp.kappa(0.0) + 16 * cp.kappa(-d) -
              cp.kappa(-2 * d)) /
            (12 * d * d);
    return cp;
}

CurvatureProfile curvature_two_bump() {
    auto fp = [](double x) { return 4 * x * (1 - x * x); };
    auto speed = [fp](double x) { return std::sqrt(1.0 + fp(x) * fp(x)); };
    auto arclen = [speed](double x) {
        return adaptive_trapezoid(speed, 0.0, x, 1e-10);
    };
    auto x_of_sigma = [arclen, speed](double sig) {
        double sgn = (sig < 0) ? -1.0 : 1.0;
        double s = std::abs(sig);
        if (s == 0.0) return 0.0;
        double x = s;
        for (int it = 0; it < 100; ++it) {
            double step = (arclen(x) - s) / speed(x);
            x -= step;
            if (std::abs(step) < 1e-13 * (1.0 + std::abs(x))) break;
        }
        return sgn * x;
    };
    CurvatureProfile cp;
    cp.kappa = [fp, x_of_sigma](double sig) {
        double x = x_of_sigma(sig);
        return (12 * x * x - 4) / std::pow(1.0 + fp(x) * fp(x), 1.5);
    };
    cp.kappa_max = 8.0;
    double s1 = arclen(1.0);
    cp.max_locations = {-s1, s1};
    const double d = 1e-2;
    auto k = cp.kappa;
    cp.k2 = -(-k(s1 + 2 * d) + 16 * k(s1 + d) - 30 * k(s1) + 16 * k(s1 - d) - k(s1 - 2 * d)) /
            (12 * d * d);
    return cp;
}

std::vector<double> curvature_profile_parabola(double c, const std::vector<double>& sigma_grid,
                                               double* k2_out) {
    CurvatureProfile cp = curvature_parabola(c);
    std::vector<double> out;
    out.reserve(sigma_grid.size());
    for (double s : sigma_grid) out.push_back(cp.kappa(s));
    if (k2_out) *k2_out = cp.k2;
    return out;
}

} // namespace magspec
