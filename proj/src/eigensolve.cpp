#include "magspec/eigensolve.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <Eigen/SparseCholesky>

namespace magspec {

EigenResult tridiag_smallest(const SymTridiag& T, int n_eigs, double tol) {
    const int n = T.dim();
    if (n_eigs < 1 || n_eigs > n)
        throw std::invalid_argument("tridiag_smallest: n_eigs out of range");
    double scale = 0.0;
    for (int i = 0; i < n; ++i) scale = std::max(scale, std::abs(T.diag[i]));
    for (double e : T.off) scale = std::max(scale, std::abs(e));

    EigenResult r;
    r.shift_used = 0.0;
    for (int k = 0; k < n_eigs; ++k) {
        double lam = bisect_eigenvalue(T, k, tol);
        // separate exactly repeated shifts so inverse iteration can resolve clusters
        if (!r.eigenvalues.empty() && lam - r.eigenvalues.back() < 1e-14 * std::max(1.0, scale))
            lam = r.eigenvalues.back() + 1e-14 * std::max(1.0, scale);
        double res = 0.0;
        std::vector<double> v = inverse_iteration(T, lam, &res);
        // orthogonalize inside near-degenerate clusters
        for (int prev = k - 1; prev >= 0; --prev) {
            if (lam - r.eigenvalues[prev] > 1e-8 * std::max(1.0, scale)) break;
            double dot = 0.0;
            for (int i = 0; i < n; ++i) dot += v[i] * r.eigenvectors[prev][i].real();
            for (int i = 0; i < n; ++i) v[i] -= dot * r.eigenvectors[prev][i].real();
        }
        double nrm = 0.0;
        for (double x : v) nrm += x * x;
        nrm = std::sqrt(nrm);
        for (double& x : v) x /= nrm;
        r.eigenvalues.push_back(lam);
        r.eigenvectors.emplace_back(v.begin(), v.end());
        r.residuals.push_back(res / std::max(1.0, scale));
        r.iterations += 1;
    }
    return r;
}

using SpMat = Eigen::SparseMatrix<cplx>;

static SpMat to_eigen_full(const HermitianSparse& A) {
    std::vector<Eigen::Triplet<cplx>> trip;
    trip.reserve(2 * A.entries.size());
    for (const auto& e : A.entries) {
        trip.emplace_back(e.row, e.col, e.value);
        if (e.row != e.col) trip.emplace_back(e.col, e.row, std::conj(e.value));
    }
    SpMat M(A.dim, A.dim);
    M.setFromTriplets(trip.begin(), trip.end());
    return M;
}

EigenResult sparse_smallest(const HermitianSparse& A, int n_eigs, double shift,
                            double tol, int max_iter, std::uint64_t seed) {
    A.validate();
    const int n = A.dim;
    if (n_eigs < 1 || n_eigs > n)
        throw std::invalid_argument("sparse_smallest: n_eigs out of range");
    using Vec = Eigen::VectorXcd;

    SpMat Afull = to_eigen_full(A);
    Eigen::VectorXd mass = Eigen::VectorXd::Ones(n);
    if (!A.mass.empty())
        mass = Eigen::Map<const Eigen::VectorXd>(A.mass.data(), n);

    SpMat K = Afull;
    for (int i = 0; i < n; ++i) K.coeffRef(i, i) -= cplx(shift * mass[i], 0.0);
    Eigen::SimplicialLDLT<SpMat, Eigen::Lower> ldlt;
    ldlt.compute(K);
    if (ldlt.info() != Eigen::Success)
        throw std::runtime_error("sparse_smallest: factorization failed (shift too close to the spectrum)");

    auto m_dot = [&](const Vec& a, const Vec& b) {
        return (a.conjugate().cwiseProduct(mass.cast<cplx>()).cwiseProduct(b)).sum();
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    Vec v(n);
    for (int i = 0; i < n; ++i) v[i] = cplx(U(rng), U(rng));
    v /= std::sqrt(std::abs(m_dot(v, v)));

    std::vector<Vec> basis;
    std::vector<double> alpha, beta;   // Lanczos tridiagonal of K^{-1} M
    double matrix_scale = std::abs(shift);
    for (const auto& e : A.entries)
        if (e.row == e.col) matrix_scale = std::max(matrix_scale, std::abs(e.value));

    EigenResult out;
    out.shift_used = shift;
    Eigen::VectorXd ritz;
    Eigen::MatrixXd ritz_vecs;

    auto small_solve = [&](int m) {
        Eigen::MatrixXd Tm = Eigen::MatrixXd::Zero(m, m);
        for (int i = 0; i < m; ++i) {
            Tm(i, i) = alpha[i];
            if (i + 1 < m) Tm(i, i + 1) = Tm(i + 1, i) = beta[i];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(Tm);
        ritz = es.eigenvalues();     // ascending; largest theta = smallest lambda
        ritz_vecs = es.eigenvectors();
    };

    // Extract the n_eigs smallest eigenpairs from the current Lanczos basis and
    // certify residuals against the original (A, M).
    auto extract = [&](int m) -> bool {   // requires small_solve(m) already done
        out.eigenvalues.clear();
        out.eigenvectors.clear();
        out.residuals.clear();
        bool all_ok = true;
        for (int i = 0; i < n_eigs; ++i) {
            double theta = ritz[m - 1 - i];
            if (theta <= 0.0) return false;
            double lam = shift + 1.0 / theta;
            Vec x = Vec::Zero(n);
            for (int j = 0; j < m; ++j) x += ritz_vecs(j, m - 1 - i) * basis[j];
            x /= std::sqrt(std::abs(m_dot(x, x)));
            Vec rvec = Afull * x - cplx(lam) * mass.cast<cplx>().cwiseProduct(x);
            double res = rvec.norm() / std::max(1.0, matrix_scale);
            out.eigenvalues.push_back(lam);
            out.eigenvectors.emplace_back(x.data(), x.data() + n);
            out.residuals.push_back(res);
            if (res > tol) all_ok = false;
        }
        out.iterations = m;
        return all_ok;
    };

    for (int m = 1; m <= max_iter; ++m) {
        basis.push_back(v);
        Vec w = ldlt.solve((mass.cast<cplx>().cwiseProduct(v)).eval());
        alpha.push_back(std::real(m_dot(basis.back(), w)));
        // full reorthogonalization (twice) against the whole basis
        for (int pass = 0; pass < 2; ++pass)
            for (const auto& q : basis) w -= m_dot(q, w) * q;
        double b = std::sqrt(std::abs(m_dot(w, w)));

        bool terminal = (b < 1e-14 || m == n || m == max_iter);
        if (m >= n_eigs + 2 && (m % 5 == 0 || terminal)) {
            small_solve(m);
            // cheap a priori bound b |y_m| / theta^2 before forming Ritz vectors
            bool plausible = true;
            for (int i = 0; i < n_eigs; ++i) {
                double theta = ritz[m - 1 - i];
                if (theta <= 0.0) { plausible = false; break; }
                double lam = shift + 1.0 / theta;
                if (b * std::abs(ritz_vecs(m - 1, m - 1 - i)) / (theta * theta) >
                    tol * std::max(1.0, std::abs(lam))) { plausible = false; break; }
            }
            if ((plausible || terminal) && extract(m)) return out;
        }
        if (terminal) {
            if (b < 1e-14 || m == n) {
                // Krylov space exhausted: the extracted pairs are as good as the
                // basis allows; return them if present
                if (out.eigenvalues.size() == static_cast<size_t>(n_eigs)) return out;
            }
            break;
        }
        v = w / b;
        beta.push_back(b);
    }
    throw std::runtime_error("sparse_smallest: not converged after max_iter");
}

} // namespace magspec
