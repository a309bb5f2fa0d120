#pragma once

// Real linear algebra on tensor-product registers.
//
// Basis ordering convention: register 0 is the most significant digit of the
// mixed-radix index, which coincides with the leftmost Kronecker factor.

#include <Eigen/Dense>

#include <cmath>
#include <cstddef>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "stoqext/permutation.hpp"

namespace stoqext {

template <typename Scalar>
using Matrix = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Scalar>
using Vector = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

using MatrixXd = Matrix<double>;
using VectorXd = Vector<double>;

/// Mixed-radix digits addressing one computational-basis vector of a layout.
using BasisIndex = std::vector<std::size_t>;

struct Tolerances {
    double symmetric = 1e-10;
    double psd = 1e-9;
};

class RegisterLayout {
public:
    RegisterLayout() = default;
    explicit RegisterLayout(std::vector<std::size_t> dims) : dims_(std::move(dims)) {
        total_ = 1;
        for (std::size_t d : dims_) {
            if (d == 0) throw std::invalid_argument("RegisterLayout: every dimension must be >= 1");
            total_ *= d;
        }
    }
    RegisterLayout(std::initializer_list<std::size_t> dims)
        : RegisterLayout(std::vector<std::size_t>(dims)) {}

    const std::vector<std::size_t>& dims() const { return dims_; }
    std::size_t size() const { return dims_.size(); }
    std::size_t dim(std::size_t i) const { return dims_.at(i); }
    std::size_t total_dim() const { return total_; }

    RegisterLayout concat(const RegisterLayout& other) const {
        std::vector<std::size_t> d = dims_;
        d.insert(d.end(), other.dims_.begin(), other.dims_.end());
        return RegisterLayout(std::move(d));
    }

    std::size_t encode(std::span<const std::size_t> digits) const {
        if (digits.size() != dims_.size())
            throw std::invalid_argument("RegisterLayout::encode: digit count mismatch");
        std::size_t index = 0;
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (digits[i] >= dims_[i])
                throw std::out_of_range("RegisterLayout::encode: digit out of range");
            index = index * dims_[i] + digits[i];
        }
        return index;
    }

    BasisIndex decode(std::size_t index) const {
        if (index >= total_) throw std::out_of_range("RegisterLayout::decode: index out of range");
        BasisIndex digits(dims_.size());
        for (std::size_t i = dims_.size(); i-- > 0;) {
            digits[i] = index % dims_[i];
            index /= dims_[i];
        }
        return digits;
    }

    std::string to_string() const {
        std::string s = "(";
        for (std::size_t i = 0; i < dims_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(dims_[i]);
        }
        return s + ")";
    }

    friend bool operator==(const RegisterLayout&, const RegisterLayout&) = default;

private:
    std::vector<std::size_t> dims_;
    std::size_t total_ = 1;
};

/// A square matrix acting on the space described by `layout`.
template <typename Scalar>
struct Operator {
    RegisterLayout layout;
    Matrix<Scalar> matrix;

    Operator() = default;
    Operator(RegisterLayout l, Matrix<Scalar> m) : layout(std::move(l)), matrix(std::move(m)) {
        const auto n = static_cast<Eigen::Index>(layout.total_dim());
        if (matrix.rows() != n || matrix.cols() != n)
            throw std::invalid_argument("Operator: matrix shape " + std::to_string(matrix.rows()) +
                                        "x" + std::to_string(matrix.cols()) +
                                        " inconsistent with layout " + layout.to_string());
    }

    static Operator identity(const RegisterLayout& l) {
        const auto n = static_cast<Eigen::Index>(l.total_dim());
        return Operator(l, Matrix<Scalar>::Identity(n, n));
    }

    Eigen::Index dim() const { return matrix.rows(); }
};

using RealOperator = Operator<double>;

/// Kronecker product; the result's layout is a's registers followed by b's.
template <typename Scalar>
Operator<Scalar> tensor(const Operator<Scalar>& a, const Operator<Scalar>& b) {
    const Eigen::Index ra = a.matrix.rows(), rb = b.matrix.rows();
    Matrix<Scalar> out(ra * rb, ra * rb);
    for (Eigen::Index i = 0; i < ra; ++i)
        for (Eigen::Index j = 0; j < ra; ++j)
            out.block(i * rb, j * rb, rb, rb) = a.matrix(i, j) * b.matrix;
    return Operator<Scalar>(a.layout.concat(b.layout), std::move(out));
}

template <typename Scalar>
Vector<Scalar> tensor(const Vector<Scalar>& a, const Vector<Scalar>& b) {
    Vector<Scalar> out(a.size() * b.size());
    for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
    return out;
}

/// Places `op` on the registers of `full` named by `tested` (in op's register
/// order) and the identity on every other register.
template <typename Scalar>
Operator<Scalar> embed_on_tested(const Operator<Scalar>& op, const RegisterLayout& full,
                                 std::span<const std::size_t> tested) {
    if (tested.size() != op.layout.size())
        throw std::invalid_argument("embed_on_tested: position count differs from operator registers");
    std::vector<bool> is_tested(full.size(), false);
    for (std::size_t k = 0; k < tested.size(); ++k) {
        const std::size_t p = tested[k];
        if (p >= full.size() || is_tested[p])
            throw std::invalid_argument("embed_on_tested: invalid or repeated position");
        if (full.dim(p) != op.layout.dim(k))
            throw std::invalid_argument("embed_on_tested: dimension mismatch at position " +
                                        std::to_string(p));
        is_tested[p] = true;
    }
    std::vector<std::size_t> rest_dims;
    std::vector<std::size_t> rest_positions;
    for (std::size_t p = 0; p < full.size(); ++p)
        if (!is_tested[p]) {
            rest_dims.push_back(full.dim(p));
            rest_positions.push_back(p);
        }
    const RegisterLayout rest(rest_dims);

    // Full-space index of (tested digits, rest digits).
    const std::size_t t_dim = op.layout.total_dim(), r_dim = rest.total_dim();
    std::vector<std::size_t> route(t_dim * r_dim);
    BasisIndex digits(full.size());
    for (std::size_t t = 0; t < t_dim; ++t) {
        const BasisIndex td = op.layout.decode(t);
        for (std::size_t k = 0; k < tested.size(); ++k) digits[tested[k]] = td[k];
        for (std::size_t r = 0; r < r_dim; ++r) {
            const BasisIndex rd = rest.decode(r);
            for (std::size_t k = 0; k < rest_positions.size(); ++k) digits[rest_positions[k]] = rd[k];
            route[t * r_dim + r] = full.encode(digits);
        }
    }
    const auto n = static_cast<Eigen::Index>(full.total_dim());
    Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
    for (std::size_t s = 0; s < t_dim; ++s)
        for (std::size_t t = 0; t < t_dim; ++t) {
            const Scalar v = op.matrix(static_cast<Eigen::Index>(s), static_cast<Eigen::Index>(t));
            if (v == Scalar(0)) continue;
            for (std::size_t r = 0; r < r_dim; ++r)
                out(static_cast<Eigen::Index>(route[s * r_dim + r]),
                    static_cast<Eigen::Index>(route[t * r_dim + r])) = v;
        }
    return Operator<Scalar>(full, std::move(out));
}

/// U_tau on A^{⊗R}: the tensor factor in slot i is moved to slot tau(i).
template <typename Scalar = double>
Operator<Scalar> copy_permutation(const Permutation& tau, std::size_t local_dim) {
    const std::size_t copies = tau.size();
    const RegisterLayout layout(std::vector<std::size_t>(copies, local_dim));
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    Matrix<Scalar> out = Matrix<Scalar>::Zero(n, n);
    BasisIndex moved(copies);
    for (std::size_t x = 0; x < layout.total_dim(); ++x) {
        const BasisIndex digits = layout.decode(x);
        for (std::size_t i = 0; i < copies; ++i) moved[tau(i)] = digits[i];
        out(static_cast<Eigen::Index>(layout.encode(moved)), static_cast<Eigen::Index>(x)) = Scalar(1);
    }
    return Operator<Scalar>(layout, std::move(out));
}

template <typename Derived>
bool is_entrywise_nonneg(const Eigen::MatrixBase<Derived>& m, double tol = 0.0) {
    if (tol < 0) throw std::invalid_argument("is_entrywise_nonneg: tol must be >= 0");
    return m.size() == 0 || m.minCoeff() >= -tol;
}

template <typename Scalar>
bool is_entrywise_nonneg(const Operator<Scalar>& op, double tol = 0.0) {
    return is_entrywise_nonneg(op.matrix, tol);
}

template <typename Derived>
bool is_symmetric(const Eigen::MatrixBase<Derived>& m, double tol = Tolerances{}.symmetric) {
    if (m.rows() != m.cols()) return false;
    return m.size() == 0 || (m - m.transpose()).cwiseAbs().maxCoeff() <= tol;
}

/// True iff every eigenvalue lies in [-tol, 1 + tol].
template <typename Derived>
bool psd_interval_check(const Eigen::MatrixBase<Derived>& m, double tol = Tolerances{}.psd,
                        double symmetric_tol = Tolerances{}.symmetric) {
    if (!is_symmetric(m, symmetric_tol))
        throw std::invalid_argument("psd_interval_check: operator is not symmetric");
    using Plain = typename Derived::PlainObject;
    if (m.size() == 0) return true;
    Eigen::SelfAdjointEigenSolver<Plain> es(m.eval(), Eigen::EigenvaluesOnly);
    const auto& ev = es.eigenvalues();
    return ev.minCoeff() >= -tol && ev.maxCoeff() <= 1.0 + tol;
}

template <typename Scalar>
bool psd_interval_check(const Operator<Scalar>& op, double tol = Tolerances{}.psd,
                        double symmetric_tol = Tolerances{}.symmetric) {
    return psd_interval_check(op.matrix, tol, symmetric_tol);
}

/// Largest singular value.
template <typename Derived>
double spectral_norm(const Eigen::MatrixBase<Derived>& m) {
    if (m.size() == 0) return 0.0;
    using Plain = typename Derived::PlainObject;
    if (is_symmetric(m, 0.0)) {
        Eigen::SelfAdjointEigenSolver<Plain> es(m.eval(), Eigen::EigenvaluesOnly);
        return es.eigenvalues().cwiseAbs().maxCoeff();
    }
    Eigen::BDCSVD<Plain> svd(m.eval());
    return svd.singularValues()(0);
}

}  // namespace stoqext
