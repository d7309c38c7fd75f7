#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include "pq/assemble.hpp"
#include "pq/rng.hpp"
#include "pq/sparse.hpp"

namespace pq::spectral {

struct EigenOptions {
    double tol = 1e-8;       // relative residual ||Av - lambda Mv|| / ||Av||
    int max_iter = 500;      // outer inverse-iteration steps
    std::uint64_t seed = 1;  // start-block seed
    int block = 4;           // subspace dimension (clamped to n)
};

struct EigenResult {
    double lambda = 0;
    std::vector<Complex> vector;  // normalized eigenvector (2-norm)
    double residual = 0;          // certified ||Av - lambda Mv|| / ||Av||
    int iterations = 0;
    bool converged = false;
};

namespace detail {

/// Jacobi-preconditioned conjugate gradients for Hermitian positive definite
/// systems; stops at ||r|| <= rel_tol * ||b||.  Throws "indefinite system"
/// on a nonpositive curvature direction.
template <typename T>
int cg_solve(const CsrMatrix<T>& a, const std::vector<T>& b, std::vector<T>& x,
             const std::vector<double>& inv_diag, double rel_tol, int max_iter) {
    const int n = a.n;
    std::vector<T> r(n), z(n), p(n), ap(n);
    a.multiply(x.data(), r.data());
    for (int i = 0; i < n; ++i) r[i] = b[i] - r[i];
    const double bnorm = norm2(b);
    if (bnorm == 0.0) {
        std::fill(x.begin(), x.end(), T{});
        return 0;
    }
    const double target = rel_tol * bnorm;
    double rnorm = norm2(r);
    if (rnorm <= target) return 0;
    for (int i = 0; i < n; ++i) z[i] = r[i] * inv_diag[i];
    p = z;
    T rz = dot(r, z);
    int it = 0;
    for (; it < max_iter; ++it) {
        a.multiply(p.data(), ap.data());
        const double pap = real_part(dot(p, ap));
        if (!(pap > 0)) throw std::runtime_error("indefinite system: nonpositive curvature in CG");
        const double alpha = real_part(rz) / pap;
        for (int i = 0; i < n; ++i) x[i] += alpha * p[i];
        for (int i = 0; i < n; ++i) r[i] -= alpha * ap[i];
        rnorm = norm2(r);
        if (rnorm <= target) {
            ++it;
            break;
        }
        for (int i = 0; i < n; ++i) z[i] = r[i] * inv_diag[i];
        const T rz_new = dot(r, z);
        const double beta = real_part(rz_new) / real_part(rz);
        rz = rz_new;
        for (int i = 0; i < n; ++i) p[i] = z[i] + beta * p[i];
    }
    return it;
}

template <typename T>
inline std::vector<T> seeded_vector(int n, rng::Rng& r) {
    std::vector<T> x(n);
    for (int i = 0; i < n; ++i) {
        if constexpr (is_complex<T>::value)
            x[i] = T(r.uniform(-1, 1), r.uniform(-1, 1));
        else
            x[i] = r.uniform(-1, 1);
    }
    return x;
}

/// Modified Gram-Schmidt with one reorthogonalization pass.  Columns that
/// collapse are reseeded deterministically.
template <typename T>
void orthonormalize(std::vector<std::vector<T>>& cols, rng::Rng& reseed) {
    const std::size_t b = cols.size();
    for (std::size_t j = 0; j < b; ++j) {
        for (int pass = 0; pass < 2; ++pass)
            for (std::size_t k = 0; k < j; ++k) {
                const T proj = dot(cols[k], cols[j]);
                for (std::size_t i = 0; i < cols[j].size(); ++i) cols[j][i] -= proj * cols[k][i];
            }
        double nj = norm2(cols[j]);
        if (!(nj > 1e-100)) {
            cols[j] = seeded_vector<T>(static_cast<int>(cols[j].size()), reseed);
            for (std::size_t k = 0; k < j; ++k) {
                const T proj = dot(cols[k], cols[j]);
                for (std::size_t i = 0; i < cols[j].size(); ++i) cols[j][i] -= proj * cols[k][i];
            }
            nj = norm2(cols[j]);
        }
        const double inv = 1.0 / nj;
        for (auto& v : cols[j]) v = v * inv;
    }
}

}  // namespace detail

/// Smallest eigenvalue of the pencil (A, M) for Hermitian positive
/// semidefinite A and positive diagonal M (or the standard problem when M is
/// absent).  Blocked shift-0 inverse power iteration on the symmetrically
/// scaled operator B = M^{-1/2} A M^{-1/2}: conjugate-gradient inner solves
/// (tolerance 0.01 * tol, warm-started) advance a small subspace and
/// Rayleigh-Ritz extracts the ground pair, which keeps clustered ground
/// states from stalling the iteration.  Deterministic given the seed; the
/// residual is certified on the original pencil.
template <typename T>
EigenResult smallest_eigenvalue(const CsrMatrix<T>& a, const std::vector<double>* mdiag,
                                const EigenOptions& opt = {}) {
    const int n = a.n;
    if (n <= 0) throw std::invalid_argument("smallest_eigenvalue: empty operator");
    if (!(opt.tol > 0)) throw std::invalid_argument("smallest_eigenvalue: tol must be positive");
    if (mdiag) {
        if (static_cast<int>(mdiag->size()) != n)
            throw std::invalid_argument("smallest_eigenvalue: M dimension mismatch");
        for (double v : *mdiag)
            if (!(v > 0)) throw std::invalid_argument("smallest_eigenvalue: M must be positive");
    }

    // B = D A D with D = M^{-1/2}
    std::vector<double> dscale(n, 1.0);
    if (mdiag)
        for (int i = 0; i < n; ++i) dscale[i] = 1.0 / std::sqrt((*mdiag)[i]);
    CsrMatrix<T> b = a;
    if (mdiag)
        for (int r = 0; r < n; ++r)
            for (int p = b.row_ptr[r]; p < b.row_ptr[r + 1]; ++p)
                b.val[p] *= dscale[r] * dscale[b.col[p]];

    std::vector<double> inv_diag(n, 1.0);
    {
        const std::vector<T> d = b.diagonal();
        for (int i = 0; i < n; ++i) {
            const double dr = real_part(d[i]);
            if (!(dr > 0)) throw std::runtime_error("indefinite system: nonpositive diagonal");
            inv_diag[i] = 1.0 / dr;
        }
    }

    const int bs = std::max(1, std::min(opt.block, n));
    rng::Rng seed_rng(opt.seed);
    std::vector<std::vector<T>> X(bs), Y(bs);
    for (int j = 0; j < bs; ++j) X[j] = detail::seeded_vector<T>(n, seed_rng);
    detail::orthonormalize(X, seed_rng);

    const int cg_max = std::max(20000, 40 * static_cast<int>(std::sqrt(double(n)) + 1));

    EigenResult res;
    std::vector<double> theta(bs, 0.0);
    std::vector<T> bg(n), av(n), rvec(n);
    double res_prev = 1.0;
    for (int it = 1; it <= opt.max_iter; ++it) {
        // inexact inverse iteration: the inner solves only need to track the
        // current outer residual (floored at 0.01 * tol)
        const double cg_tol = 0.01 * std::max(opt.tol, std::min(res_prev, 1.0));
        for (int j = 0; j < bs; ++j) {
            Y[j] = X[j];
            if (it > 1 && theta[j] > 0)  // warm start: B^{-1} x ~ x / theta
                for (auto& v : Y[j]) v = v * (1.0 / theta[j]);
            detail::cg_solve(b, X[j], Y[j], inv_diag, cg_tol, cg_max);
        }
        X = Y;
        detail::orthonormalize(X, seed_rng);

        // Rayleigh-Ritz on span(X); rotate the block into the Ritz basis
        std::vector<std::vector<T>> BX(bs, std::vector<T>(n));
        for (int j = 0; j < bs; ++j) b.multiply(X[j].data(), BX[j].data());
        std::vector<std::vector<T>> rot(bs, std::vector<T>(bs));
        if constexpr (is_complex<T>::value) {
            Eigen::MatrixXcd S(bs, bs);
            for (int j = 0; j < bs; ++j)
                for (int k = 0; k < bs; ++k) S(j, k) = dot(X[j], BX[k]);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(S);
            for (int j = 0; j < bs; ++j) {
                theta[j] = es.eigenvalues()(j);
                for (int k = 0; k < bs; ++k) rot[j][k] = es.eigenvectors()(k, j);
            }
        } else {
            Eigen::MatrixXd S(bs, bs);
            for (int j = 0; j < bs; ++j)
                for (int k = 0; k < bs; ++k) S(j, k) = dot(X[j], BX[k]);
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(S);
            for (int j = 0; j < bs; ++j) {
                theta[j] = es.eigenvalues()(j);
                for (int k = 0; k < bs; ++k) rot[j][k] = es.eigenvectors()(k, j);
            }
        }
        std::vector<std::vector<T>> XR(bs, std::vector<T>(n));
        for (int j = 0; j < bs; ++j)
            for (int i = 0; i < n; ++i) {
                T acc{};
                for (int k = 0; k < bs; ++k) acc += rot[j][k] * X[k][i];
                XR[j][i] = acc;
            }
        X = std::move(XR);
        const double ng = norm2(X[0]);
        for (auto& v : X[0]) v = v * (1.0 / ng);

        const double lambda = theta[0];
        b.multiply(X[0].data(), bg.data());
        // certificate on the original pencil: v = D x, Av = D^{-1}(Bx), Mv = D^{-1}x
        for (int i = 0; i < n; ++i) {
            av[i] = bg[i] * (1.0 / dscale[i]);
            rvec[i] = (bg[i] - lambda * X[0][i]) * (1.0 / dscale[i]);
        }
        res.lambda = lambda;
        res.residual = norm2(rvec) / norm2(av);
        res.iterations = it;
        res_prev = res.residual;
        if (res.residual <= opt.tol) {
            res.converged = true;
            break;
        }
    }

    res.vector.resize(n);
    for (int i = 0; i < n; ++i)
        res.vector[i] = Complex(real_part(X[0][i]), imag_part(X[0][i])) * dscale[i];
    // normalize and fix the phase of the largest component (determinism)
    {
        double nv = 0;
        for (const Complex& v : res.vector) nv += abs2(v);
        nv = std::sqrt(nv);
        int imax = 0;
        double vmax = -1;
        for (int i = 0; i < n; ++i)
            if (abs2(res.vector[i]) > vmax) {
                vmax = abs2(res.vector[i]);
                imax = i;
            }
        Complex ph = res.vector[imax];
        ph /= std::abs(ph);
        for (Complex& v : res.vector) v /= ph * nv;
    }
    return res;
}

inline EigenResult smallest_eigenvalue(const GeneralizedPencil& p, const EigenOptions& opt = {}) {
    return smallest_eigenvalue(p.A, &p.M, opt);
}

}  // namespace pq::spectral
