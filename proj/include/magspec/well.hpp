#pragma once
#include <vector>

namespace magspec {

// Dense polynomial, ascending powers: c[0] + c[1] x + ...
struct Polynomial {
    std::vector<double> c;

    Polynomial() = default;
    explicit Polynomial(std::vector<double> coeffs) : c(std::move(coeffs)) {}

    double operator()(double x) const {
        double v = 0.0;
        for (int i = static_cast<int>(c.size()) - 1; i >= 0; --i) v = v * x + c[i];
        return v;
    }
    Polynomial derivative() const {
        Polynomial d;
        for (size_t i = 1; i < c.size(); ++i) d.c.push_back(i * c[i]);
        return d;
    }
};

struct WellMinimum {
    double s;        // location
    double value;    // gamma(s)
    double second;   // gamma''(s) > 0
};

// Field-strength profile gamma(s) with its minima on a working interval.
struct WellProfile {
    Polynomial gamma;
    std::vector<WellMinimum> minima;
    double gamma0 = 0.0;   // global minimum value on the interval
    double s_lo = 0.0, s_hi = 0.0;

    // Locates interior minima of gamma on [lo, hi] by a sign-change scan of
    // gamma' refined with bisection; requires gamma > 0 on the interval.
    static WellProfile analyze(Polynomial gamma, double lo, double hi);
};

} // namespace magspec
