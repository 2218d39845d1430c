#pragma once
#include <cmath>
#include <functional>

namespace magspec {

// Adaptive trapezoid: bisect an interval until the two-panel estimate agrees
// with the one-panel estimate to the requested relative tolerance.  Suited to
// smooth integrands with isolated sqrt-type softness (refined locally).
inline double adaptive_trapezoid(const std::function<double(double)>& f,
                                 double a, double b,
                                 double rel_tol = 1e-8, int max_depth = 40) {
    struct Rec {
        const std::function<double(double)>& f;
        double rel_tol;
        double scale;
        double run(double a, double fa, double b, double fb, double whole, int depth) const {
            double m = 0.5 * (a + b);
            double fm = f(m);
            double left = 0.5 * (m - a) * (fa + fm);
            double right = 0.5 * (b - m) * (fm + fb);
            double two = left + right;
            if (depth <= 0 || std::abs(two - whole) <= rel_tol * (std::abs(two) + scale))
                return two + (two - whole) / 3.0;   // Richardson tail of the trapezoid pair
            return run(a, fa, m, fm, left, depth - 1) + run(m, fm, b, fb, right, depth - 1);
        }
    };
    double fa = f(a), fb = f(b);
    double whole = 0.5 * (b - a) * (fa + fb);
    Rec rec{f, rel_tol, 1e-300};
    // seed the scale with a coarse magnitude estimate so empty integrals terminate
    rec.scale = 1e-12 * (std::abs(whole) + (b - a));
    return rec.run(a, fa, b, fb, whole, max_depth);
}

} // namespace magspec
