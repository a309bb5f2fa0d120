#pragma once

// Extremal eigenvalues of real symmetric operators.
//
// Small operators go through Eigen's dense self-adjoint solver. Above the
// cutover a thick-restart Lanczos iteration with full reorthogonalization is
// used; each restart keeps the leading Ritz vectors and continues from the
// (shared) residual direction.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>
#include <string>

#include "stoqext/tensor.hpp"

namespace stoqext {

struct EigenOptions {
    Eigen::Index dense_cutover = 512;  ///< dim <= cutover uses the dense solver
    Eigen::Index krylov_dim = 48;
    Eigen::Index kept_ritz = 8;
    int max_restarts = 2000;
    double residual_tol = 1e-10;  ///< relative to max(1, |theta|)
    std::uint64_t seed = 0x5eedULL;
};

template <typename Scalar>
struct EigenPair {
    Scalar value{};
    Vector<Scalar> vector;
    int restarts = 0;
    bool iterative = false;
};

class NonConvergence : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

namespace detail {

template <typename Scalar>
void orthogonalize(Vector<Scalar>& w, const Matrix<Scalar>& basis, Eigen::Index cols) {
    if (cols == 0) return;
    for (int pass = 0; pass < 2; ++pass) {
        const Vector<Scalar> c = basis.leftCols(cols).transpose() * w;
        w.noalias() -= basis.leftCols(cols) * c;
    }
}

template <typename Scalar, typename Rng>
Vector<Scalar> fresh_direction(Eigen::Index n, const Matrix<Scalar>& basis, Eigen::Index cols, Rng& rng) {
    std::normal_distribution<double> gauss;
    for (int attempt = 0; attempt < 16; ++attempt) {
        Vector<Scalar> w(n);
        for (Eigen::Index i = 0; i < n; ++i) w(i) = Scalar(gauss(rng));
        orthogonalize(w, basis, cols);
        const Scalar nrm = w.norm();
        if (nrm > Scalar(1e-8)) return w / nrm;
    }
    return Vector<Scalar>();
}

}  // namespace detail

/// Largest eigenvalue and a unit eigenvector of a symmetric matrix.
template <typename Derived>
EigenPair<typename Derived::Scalar> top_eigenpair(const Eigen::MatrixBase<Derived>& a,
                                                  const EigenOptions& opt = {}) {
    using Scalar = typename Derived::Scalar;
    using Mat = Matrix<Scalar>;
    using Vec = Vector<Scalar>;
    const Eigen::Index n = a.rows();
    if (a.cols() != n) throw std::invalid_argument("top_eigenpair: matrix is not square");
    if (n == 0) throw std::invalid_argument("top_eigenpair: empty matrix");

    EigenPair<Scalar> out;
    if (n <= opt.dense_cutover) {
        Eigen::SelfAdjointEigenSolver<Mat> es(a.eval());
        out.value = es.eigenvalues()(n - 1);
        out.vector = es.eigenvectors().col(n - 1);
        return out;
    }

    const Mat& A = a.derived();
    const Eigen::Index kmax = std::min<Eigen::Index>(std::max<Eigen::Index>(opt.krylov_dim, 4), n);
    const Eigen::Index keep = std::clamp<Eigen::Index>(opt.kept_ritz, 1, kmax - 2 > 0 ? kmax - 2 : 1);
    std::mt19937_64 rng(opt.seed);
    Mat V(n, kmax), W(n, kmax);
    Eigen::Index j = 0;
    Vec v = detail::fresh_direction<Scalar>(n, V, 0, rng);
    out.iterative = true;

    for (int restart = 0; restart <= opt.max_restarts; ++restart) {
        while (j < kmax) {
            V.col(j) = v;
            W.col(j).noalias() = A * v;
            ++j;
            if (j == kmax) break;
            Vec w = W.col(j - 1);
            detail::orthogonalize(w, V, j);
            const Scalar nrm = w.norm();
            const Scalar scale = std::max<Scalar>(Scalar(1), W.col(j - 1).norm());
            if (nrm <= Scalar(1e-12) * scale) {
                // Invariant subspace: extend with a fresh orthogonal direction.
                v = detail::fresh_direction<Scalar>(n, V, j, rng);
                if (v.size() == 0) break;
            } else {
                v = w / nrm;
            }
        }
        Mat T = V.leftCols(j).transpose() * W.leftCols(j);
        T = (T + T.transpose()).eval() / Scalar(2);
        Eigen::SelfAdjointEigenSolver<Mat> es(T);
        const Scalar theta = es.eigenvalues()(j - 1);
        const Vec y = es.eigenvectors().col(j - 1);
        Vec x = V.leftCols(j) * y;
        Vec r = W.leftCols(j) * y - theta * x;
        const Scalar xn = x.norm();
        if (r.norm() <= Scalar(opt.residual_tol) * std::max<Scalar>(Scalar(1), std::abs(theta)) * xn ||
            j >= n) {
            out.value = theta;
            out.vector = x / xn;
            out.restarts = restart;
            return out;
        }
        const Eigen::Index p = std::min<Eigen::Index>(keep, j - 1);
        const Mat Y = es.eigenvectors().rightCols(p);
        const Mat Vk = V.leftCols(j) * Y;
        const Mat Wk = W.leftCols(j) * Y;
        V.leftCols(p) = Vk;
        W.leftCols(p) = Wk;
        j = p;
        detail::orthogonalize(r, V, j);
        const Scalar rn = r.norm();
        if (rn > Scalar(1e-14)) {
            v = r / rn;
        } else {
            v = detail::fresh_direction<Scalar>(n, V, j, rng);
        }
    }
    throw NonConvergence("top_eigenpair: no convergence after " + std::to_string(opt.max_restarts) +
                         " restarts (dim " + std::to_string(n) + ")");
}

template <typename Derived>
typename Derived::Scalar lambda_max(const Eigen::MatrixBase<Derived>& a, const EigenOptions& opt = {}) {
    return top_eigenpair(a, opt).value;
}

template <typename Scalar>
Scalar lambda_max(const Operator<Scalar>& op, const EigenOptions& opt = {}) {
    return lambda_max(op.matrix, opt);
}

}  // namespace stoqext
