#include "magspec/well.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace magspec {

WellProfile WellProfile::analyze(Polynomial gamma, double lo, double hi) {
    if (!(hi > lo)) throw std::invalid_argument("WellProfile: empty interval");
    WellProfile wp;
    wp.gamma = gamma;
    wp.s_lo = lo;
    wp.s_hi = hi;
    Polynomial g1 = gamma.derivative();
    Polynomial g2 = g1.derivative();

    const int nscan = 4000;
    double step = (hi - lo) / nscan;
    double prev = g1(lo);
    double gmin = std::numeric_limits<double>::infinity();
    for (int i = 0; i <= nscan; ++i) {
        double s = lo + i * step;
        gmin = std::min(gmin, gamma(s));
        if (i == 0) continue;
        double cur = g1(s);
        if ((prev < 0.0 && cur >= 0.0)) {
            // bracketed critical point with gamma' going - to +: a minimum
            double a = s - step, b = s;
            for (int it = 0; it < 200; ++it) {
                double m = 0.5 * (a + b);
                if (g1(m) < 0.0) a = m; else b = m;
            }
            double sm = 0.5 * (a + b);
            wp.minima.push_back({sm, gamma(sm), g2(sm)});
        }
        prev = cur;
    }
    if (!(gmin > 0.0))
        throw std::invalid_argument("WellProfile: gamma must stay positive on the interval");
    if (wp.minima.empty())
        throw std::invalid_argument("WellProfile: no interior minimum found");
    wp.gamma0 = wp.minima.front().value;
    for (const auto& m : wp.minima) wp.gamma0 = std::min(wp.gamma0, m.value);
    for (const auto& m : wp.minima)
        if (!(m.second > 0.0))
            throw std::invalid_argument("WellProfile: degenerate minimum (gamma'' <= 0)");
    return wp;
}

} // namespace magspec
