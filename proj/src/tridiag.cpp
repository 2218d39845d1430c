#include "magspec/tridiag.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace magspec {

int sturm_count(const SymTridiag& T, double x) {
    // Count of negative pivots of the LDL^T factorization of T - x I.
    const int n = T.dim();
    int count = 0;
    double q = 1.0;
    const double tiny = std::numeric_limits<double>::min() / std::numeric_limits<double>::epsilon();
    for (int i = 0; i < n; ++i) {
        double e2 = (i == 0) ? 0.0 : T.off[i - 1] * T.off[i - 1];
        q = (T.diag[i] - x) - (i == 0 ? 0.0 : e2 / q);
        if (q == 0.0) q = -tiny;
        if (std::abs(q) < tiny) q = (q < 0) ? -tiny : tiny;
        if (q < 0.0) ++count;
    }
    return count;
}

static void gershgorin_bounds(const SymTridiag& T, double& lo, double& hi) {
    const int n = T.dim();
    lo = std::numeric_limits<double>::infinity();
    hi = -lo;
    for (int i = 0; i < n; ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(T.off[i - 1]);
        if (i + 1 < n) r += std::abs(T.off[i]);
        lo = std::min(lo, T.diag[i] - r);
        hi = std::max(hi, T.diag[i] + r);
    }
}

double bisect_eigenvalue(const SymTridiag& T, int k, double tol) {
    if (k < 0 || k >= T.dim()) throw std::invalid_argument("bisect_eigenvalue: index out of range");
    double lo, hi;
    gershgorin_bounds(T, lo, hi);
    // tol is absolute; the mid == lo/hi test stops at the representable limit
    double eps = std::max(tol, std::numeric_limits<double>::min());
    while (hi - lo > eps) {
        double mid = 0.5 * (lo + hi);
        if (mid == lo || mid == hi) break;
        if (sturm_count(T, mid) > k) hi = mid; else lo = mid;
    }
    return 0.5 * (lo + hi);
}

std::vector<double> inverse_iteration(const SymTridiag& T, double lambda,
                                      double* residual_out, int max_iter) {
    const int n = T.dim();
    // LU with partial pivoting of (T - lambda I); tridiagonal so the upper
    // factor has two superdiagonals.  Perturb exactly singular pivots.
    std::vector<double> d(n), u1(std::max(0, n - 1)), u2(std::max(0, n - 2));
    std::vector<double> l(std::max(0, n - 1));
    std::vector<char> swapped(std::max(0, n - 1));
    for (int i = 0; i < n; ++i) d[i] = T.diag[i] - lambda;
    for (int i = 0; i + 1 < n; ++i) u1[i] = T.off[i];
    std::fill(u2.begin(), u2.end(), 0.0);
    std::vector<double> sub(std::max(0, n - 1));
    for (int i = 0; i + 1 < n; ++i) sub[i] = T.off[i];

    double norm = 0.0;
    for (int i = 0; i < n; ++i) {
        double r = std::abs(d[i]);
        if (i > 0) r += std::abs(T.off[i - 1]);
        if (i + 1 < n) r += std::abs(T.off[i]);
        norm = std::max(norm, r);
    }
    const double pert = norm * std::numeric_limits<double>::epsilon();

    for (int i = 0; i + 1 < n; ++i) {
        // entering step i: row i = (d[i], u1[i], u2[i]=0), row i+1 = (sub[i], d[i+1], u1[i+1])
        if (std::abs(sub[i]) > std::abs(d[i])) {
            swapped[i] = 1;
            std::swap(d[i], sub[i]);
            std::swap(u1[i], d[i + 1]);
            if (i + 2 < n) { u2[i] = u1[i + 1]; u1[i + 1] = 0.0; }
        } else {
            swapped[i] = 0;
        }
        if (d[i] == 0.0) d[i] = pert;
        double m = sub[i] / d[i];
        l[i] = m;
        d[i + 1] -= m * u1[i];
        if (i + 2 < n) u1[i + 1] -= m * u2[i];
    }
    if (d[n - 1] == 0.0) d[n - 1] = pert;

    std::vector<double> v(n, 1.0 / std::sqrt(static_cast<double>(n)));
    auto solve = [&](std::vector<double>& x) {
        // forward: apply the recorded row operations
        for (int i = 0; i + 1 < n; ++i) {
            if (swapped[i]) std::swap(x[i], x[i + 1]);
            x[i + 1] -= l[i] * x[i];
        }
        // back substitution
        for (int i = n - 1; i >= 0; --i) {
            double s = x[i];
            if (i + 1 < n) s -= u1[i] * x[i + 1];
            if (i + 2 < n) s -= u2[i] * x[i + 2];
            x[i] = s / d[i];
        }
    };

    double res = std::numeric_limits<double>::infinity();
    for (int it = 0; it < max_iter; ++it) {
        solve(v);
        double nv = 0.0;
        for (double x : v) nv += x * x;
        nv = std::sqrt(nv);
        if (!(nv > 0.0) || !std::isfinite(nv))
            throw std::runtime_error("inverse_iteration: breakdown");
        for (double& x : v) x /= nv;
        // residual ||T v - lambda v||
        res = 0.0;
        for (int i = 0; i < n; ++i) {
            double r = (T.diag[i] - lambda) * v[i];
            if (i > 0) r += T.off[i - 1] * v[i - 1];
            if (i + 1 < n) r += T.off[i] * v[i + 1];
            res += r * r;
        }
        res = std::sqrt(res);
        if (res <= 1e-11 * std::max(1.0, norm) && it >= 1) break;
    }
    if (!std::isfinite(res))
        throw std::runtime_error("inverse_iteration: did not converge");
    if (residual_out) *residual_out = res;
    return v;
}

} // namespace magspec
