#pragma once
#include <algorithm>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

namespace magspec {

// Truncated power series with complex coefficients, fixed truncation order.
// Arithmetic drops terms beyond the truncation.
struct PowerSeries {
    using cplx = std::complex<double>;
    std::vector<cplx> c;   // c[j] multiplies x^j

    explicit PowerSeries(int order = 0) : c(order + 1, cplx(0.0)) {}
    int order() const { return static_cast<int>(c.size()) - 1; }

    static PowerSeries constant(double v, int order) {
        PowerSeries s(order);
        s.c[0] = v;
        return s;
    }
    static PowerSeries identity(int order) {   // the series "x"
        PowerSeries s(order);
        if (order >= 1) s.c[1] = 1.0;
        return s;
    }

    PowerSeries operator+(const PowerSeries& o) const {
        PowerSeries r(std::min(order(), o.order()));
        for (int j = 0; j <= r.order(); ++j) r.c[j] = c[j] + o.c[j];
        return r;
    }
    PowerSeries operator-(const PowerSeries& o) const {
        PowerSeries r(std::min(order(), o.order()));
        for (int j = 0; j <= r.order(); ++j) r.c[j] = c[j] - o.c[j];
        return r;
    }
    PowerSeries operator*(const PowerSeries& o) const {
        PowerSeries r(std::min(order(), o.order()));
        for (int j = 0; j <= r.order(); ++j)
            for (int i = 0; i <= j; ++i) r.c[j] += c[i] * o.c[j - i];
        return r;
    }
    PowerSeries operator*(cplx a) const {
        PowerSeries r = *this;
        for (auto& x : r.c) x *= a;
        return r;
    }

    // (series)^p for real p, requires nonzero constant term: factor out c0 and
    // expand (1 + y)^p with the binomial series.
    PowerSeries pow_real(double p) const {
        if (c[0] == cplx(0.0)) throw std::invalid_argument("PowerSeries::pow_real: zero constant term");
        const int N = order();
        PowerSeries y = *this * (1.0 / c[0]);
        y.c[0] = 0.0;
        PowerSeries acc = PowerSeries::constant(1.0, N);
        PowerSeries term = PowerSeries::constant(1.0, N);
        double binom = 1.0;
        for (int j = 1; j <= N; ++j) {
            binom *= (p - (j - 1)) / j;
            term = term * y;
            acc = acc + term * binom;
        }
        return acc * std::pow(c[0], cplx(p));
    }

    // Composition this(g(x)) where g has zero constant term.
    PowerSeries compose(const PowerSeries& g) const {
        if (g.c[0] != cplx(0.0)) throw std::invalid_argument("PowerSeries::compose: inner constant term must vanish");
        const int N = std::min(order(), g.order());
        PowerSeries acc = PowerSeries::constant(0.0, N);
        PowerSeries pw = PowerSeries::constant(1.0, N);
        acc.c[0] = c[0];
        for (int j = 1; j <= order() && j <= N; ++j) {
            pw = pw * g;
            acc = acc + pw * c[j];
        }
        return acc;
    }

    PowerSeries derivative() const {
        PowerSeries r(std::max(0, order() - 1));
        for (int j = 1; j <= order(); ++j) r.c[j - 1] = c[j] * cplx(static_cast<double>(j));
        return r;
    }
};

} // namespace magspec
