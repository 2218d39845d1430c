#include "magspec/fits.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include <Eigen/Dense>

namespace magspec {

static void window(const std::vector<double>& xs, FitResult& f) {
    auto [lo, hi] = std::minmax_element(xs.begin(), xs.end());
    f.window_lo = *lo;
    f.window_hi = *hi;
}

static double r_squared(const Eigen::VectorXd& y, const Eigen::VectorXd& fit) {
    double mean = y.mean();
    double ss_tot = (y.array() - mean).square().sum();
    double ss_res = (y - fit).squaredNorm();
    if (ss_tot <= 0.0) return ss_res <= 1e-30 ? 1.0 : 0.0;
    return std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0);
}

FitResult fit_basis(const std::vector<double>& xs, const std::vector<double>& ys,
                    const std::vector<std::function<double(double)>>& basis) {
    const int n = static_cast<int>(xs.size());
    const int p = static_cast<int>(basis.size());
    if (n < p || n < 4) throw std::invalid_argument("fit_basis: insufficient range (need >= 4 points)");
    Eigen::MatrixXd X(n, p);
    Eigen::VectorXd y(n);
    for (int i = 0; i < n; ++i) {
        y[i] = ys[i];
        for (int j = 0; j < p; ++j) X(i, j) = basis[j](xs[i]);
    }
    Eigen::VectorXd coef = X.colPivHouseholderQr().solve(y);
    FitResult f;
    f.model = "basis";
    f.params.assign(coef.data(), coef.data() + p);
    f.r_squared = r_squared(y, X * coef);
    window(xs, f);
    return f;
}

FitResult fit_power(const std::vector<double>& xs, const std::vector<double>& ys) {
    if (xs.size() != ys.size() || xs.size() < 4)
        throw std::invalid_argument("fit_power: insufficient range (need >= 4 points)");
    std::vector<double> lx, ly;
    for (size_t i = 0; i < xs.size(); ++i) {
        if (!(xs[i] > 0.0 && ys[i] > 0.0))
            throw std::invalid_argument("fit_power: non-positive data");
        lx.push_back(std::log(xs[i]));
        ly.push_back(std::log(ys[i]));
    }
    FitResult f = fit_basis(lx, ly, {[](double) { return 1.0; }, [](double x) { return x; }});
    f.model = "power-law";
    f.params = {std::exp(f.params[0]), f.params[1]};
    window(xs, f);
    return f;
}

FitResult fit_exp_rate(const std::vector<double>& h_list, const std::vector<double>& gaps,
                       double q) {
    if (h_list.size() != gaps.size() || h_list.size() < 4)
        throw std::invalid_argument("fit_exp_rate: insufficient range (need >= 4 points)");
    std::vector<double> x, ly;
    for (size_t i = 0; i < h_list.size(); ++i) {
        if (!(h_list[i] > 0.0 && gaps[i] > 0.0))
            throw std::invalid_argument("fit_exp_rate: non-positive data");
        x.push_back(1.0 / std::pow(h_list[i], q));
        ly.push_back(std::log(gaps[i]));
    }
    FitResult f = fit_basis(x, ly, {[](double) { return 1.0; }, [](double v) { return v; }});
    f.model = "exp-rate";
    f.params = {std::exp(f.params[0]), -f.params[1]};
    window(h_list, f);
    return f;
}

} // namespace magspec
