#pragma once
#include <complex>
#include <functional>
#include <map>
#include <vector>

#include "magspec/band1d.hpp"
#include "magspec/well.hpp"

namespace magspec {

// Leading WKB data for the generalized Montgomery operator over a single well:
// lambda0 = gamma0^{2/(k+2)} nu(zeta0), transport spectrum
// lambda_{n,1} = nu''(zeta0) Phi''(0) (n - 1/2), and the eikonal phase Taylor data.
struct WkbExpansion {
    int k = 0;
    double lambda0 = 0.0;
    std::map<int, double> lambda1_of_n;
    std::vector<double> phi_taylor;   // Phi(s) = sum_j phi_taylor[j] s^j, [0] = [1] = 0
    double phi2 = 0.0;                // Phi''(0)
};

struct AgmonWeight {
    std::vector<double> s_samples;
    std::vector<double> z_samples;
    std::vector<double> wells;   // zeros of z
};

// Curvature well expansion of Theorem-type camel asymptotics:
// lambda(h) ~ Theta0 - C1 kappa_max h + lambda3(n) h^{3/2}, model parameter h = hbar^{1/2}.
struct CamelExpansion {
    double theta0 = 0.0;
    double C1 = 0.0;
    double kappa_max = 0.0;
    double k2 = 0.0;   // -kappa''(0) in arclength
    struct Terms { double lambda0, lambda1, lambda2, lambda3; };
    std::map<int, Terms> lambda_terms;
    std::vector<double> phi_sigma;    // quadrature samples of Phi on phi_grid
    std::vector<double> phi_grid;
};

// Plane-curve curvature in arclength with its maximum data.
struct CurvatureProfile {
    std::function<double(double)> kappa;   // kappa(sigma)
    double kappa_max = 0.0;
    double k2 = 0.0;                       // -kappa''(sigma_max) in arclength
    std::vector<double> max_locations;     // arclength positions of the maxima
};

WkbExpansion montgomery_expansion(int k, const WellProfile& well, const BandMinimum& band,
                                  int n_max);

// Order-by-order Taylor solution of
//   gamma(s)^{2/(k+2)} nu(zeta0 + i gamma(s)^{-1/(k+2)} Phi'(s)) = gamma0^{2/(k+2)} nu(zeta0)
// on the branch with Phi''(0) > 0.  band_taylor holds nu's Taylor coefficients
// at zeta0 (from band_taylor()); returns Phi coefficients through the given
// order.  The phase is genuinely complex: past the leading real s^2 term the
// odd-derivative data of nu forces imaginary parts into alternating orders.
std::vector<std::complex<double>> eikonal_taylor(int k, const WellProfile& well,
                                                 const std::vector<double>& band_taylor,
                                                 int order);

enum class AgmonVariant { single, double_well };

AgmonWeight agmon_weight(int k, const WellProfile& well, const std::vector<double>& s_grid,
                         AgmonVariant variant, double delta = 0.5);

// Fills the Theorem-5.6-type coefficient table; when a curvature profile is
// supplied also tabulates Phi(sigma) = sqrt(2 C1 / nu''(zeta0)) |int_0^sigma sqrt(kappa(0) - kappa)|.
CamelExpansion camel_expansion(const BandMinimum& band0, double C1, double kappa_max,
                               double k2, int n_max,
                               const CurvatureProfile* kappa = nullptr,
                               const std::vector<double>& phi_grid = {});

// Curvature of the boundary x2 = -c x1^2 in arclength (max 2c at sigma = 0).
CurvatureProfile curvature_parabola(double c);

// Curvature of the two-bump boundary x2 = -(1 - x1^2)^2 (maxima 8 at x1 = +-1).
CurvatureProfile curvature_two_bump();

// Spec-facing sampling helper for the parabola profile.
std::vector<double> curvature_profile_parabola(double c, const std::vector<double>& sigma_grid,
                                               double* k2_out = nullptr);

} // namespace magspec
