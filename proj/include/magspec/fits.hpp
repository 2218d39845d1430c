#pragma once
#include <functional>
#include <string>
#include <vector>

namespace magspec {

struct FitResult {
    std::string model;              // "power-law", "exp-rate", "plateau", "basis"
    std::vector<double> params;
    double r_squared = 0.0;
    double window_lo = 0.0, window_hi = 0.0;   // x-range actually used
};

// y = A x^r fitted in log-log coordinates; params = {A, r}.
FitResult fit_power(const std::vector<double>& xs, const std::vector<double>& ys);

// gap = A exp(-c / h^q); params = {A, c}.  q = 1 for the double well,
// q = 1/2 for the camel (in the model parameter hbar^{1/2}).
FitResult fit_exp_rate(const std::vector<double>& h_list, const std::vector<double>& gaps,
                       double q = 1.0);

// General linear least squares y ~ sum_j p_j f_j(x); params = fitted p.
FitResult fit_basis(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<std::function<double(double)>>& basis);

} // namespace magspec
