#include "stoqext/extension.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stoqext {

RealOperator permute_registers(const RealOperator& m, const std::vector<std::size_t>& order) {
    if (order.empty()) return m;
    const Permutation p(order);  // validates
    if (p.size() != m.layout.size()) throw std::invalid_argument("permute_registers: order size mismatch");
    std::vector<std::size_t> dims;
    for (std::size_t old : order) dims.push_back(m.layout.dim(old));
    const Permutation inv = p.inverse();
    std::vector<std::size_t> positions(order.size());
    for (std::size_t old = 0; old < order.size(); ++old) positions[old] = inv(old);
    return embed_on_tested(m, RegisterLayout(dims), positions);
}

namespace {

void require_dim(std::size_t dim, std::size_t cap, const char* who) {
    if (dim > cap)
        throw std::length_error(std::string(who) + ": dimension " + std::to_string(dim) + " exceeds cap " +
                                std::to_string(cap));
}

/// M ⊗ I_rest as a sparse matrix.
SparseMatrixXd kron_identity(const MatrixXd& m, std::size_t rest) {
    std::vector<Eigen::Triplet<double>> trips;
    const auto r = static_cast<Eigen::Index>(rest);
    for (Eigen::Index a = 0; a < m.rows(); ++a)
        for (Eigen::Index b = 0; b < m.cols(); ++b) {
            const double v = m(a, b);
            if (v == 0.0) continue;
            for (Eigen::Index k = 0; k < r; ++k)
                trips.emplace_back(static_cast<int>(a * r + k), static_cast<int>(b * r + k), v);
        }
    SparseMatrixXd out(m.rows() * r, m.cols() * r);
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

}  // namespace

RealOperator extension_projector(const RegisterLayout& base, std::size_t copies, std::size_t max_dim) {
    if (base.size() < 2) throw std::invalid_argument("extension_projector: need at least two registers");
    const SeparatelySymmetricSpace space(base, std::vector<std::size_t>(base.size() - 1, copies));
    require_dim(space.full_layout().total_dim(), max_dim, "extension_projector");
    RealOperator acc(RegisterLayout(std::vector<std::size_t>{}), MatrixXd::Ones(1, 1));
    for (std::size_t i = 0; i + 1 < base.size(); ++i) acc = tensor(acc, sym_projector(base.dim(i), copies, max_dim));
    acc = tensor(acc, RealOperator::identity(RegisterLayout{base.dim(base.size() - 1)}));
    return acc;
}

RealOperator extension_operator(const RealOperator& m_in, std::size_t copies, const ExtensionOptions& opt) {
    if (copies == 0) throw std::invalid_argument("extension_operator: copies must be >= 1");
    const RealOperator m = permute_registers(m_in, opt.order);
    const SeparatelySymmetricSpace space(m.layout, std::vector<std::size_t>(m.layout.size() - 1, copies));
    const RegisterLayout full = space.full_layout();
    require_dim(full.total_dim(), opt.max_dim, "extension_operator");
    const RealOperator p = extension_projector(m.layout, copies, opt.max_dim);
    const std::vector<std::size_t> tested = space.tested_positions();
    const RealOperator embedded = embed_on_tested(m, full, tested);
    MatrixXd e = p.matrix * embedded.matrix * p.matrix;
    return RealOperator(full, std::move(e));
}

RealOperator extension_operator_compressed(const RealOperator& m_in, std::size_t copies,
                                           const ExtensionOptions& opt) {
    if (copies == 0) throw std::invalid_argument("extension_operator_compressed: copies must be >= 1");
    const RealOperator m = permute_registers(m_in, opt.order);
    if (m.layout.size() < 2) throw std::invalid_argument("extension_operator_compressed: need m >= 2");
    const SeparatelySymmetricSpace space(m.layout, std::vector<std::size_t>(m.layout.size() - 1, copies));
    require_dim(space.dim(), opt.max_dim, "extension_operator_compressed");
    const SparseMatrixXd& f = space.first_copy_split();
    const SparseMatrixXd k = kron_identity(m.matrix, space.rest_dim());
    const SparseMatrixXd kf = k * f;
    const SparseMatrixXd ft = f.transpose();
    MatrixXd e = MatrixXd(ft * kf);
    e = (e + e.transpose()).eval() / 2.0;
    return RealOperator(space.compressed_layout(), std::move(e));
}

double extension_lambda_max(const RealOperator& m, std::size_t copies, const ExtensionOptions& opt,
                            const EigenOptions& eig) {
    return lambda_max(extension_operator_compressed(m, copies, opt).matrix, eig);
}

VectorXd lift_product_witness(const ProductWitness& w, std::size_t copies) {
    if (w.size() < 2) throw std::invalid_argument("lift_product_witness: need at least two factors");
    VectorXd acc = VectorXd::Ones(1);
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        acc = tensor<double>(acc, SymmetricBasis(static_cast<std::size_t>(w[i].size()), copies).lift(w[i]));
    return tensor<double>(acc, w[w.size() - 1]);
}

VectorXd lift_product_witness_full(const ProductWitness& w, std::size_t copies) {
    if (w.size() < 2) throw std::invalid_argument("lift_product_witness_full: need at least two factors");
    VectorXd acc = VectorXd::Ones(1);
    for (std::size_t i = 0; i + 1 < w.size(); ++i)
        for (std::size_t c = 0; c < copies; ++c) acc = tensor<double>(acc, w[i]);
    return tensor<double>(acc, w[w.size() - 1]);
}

SandwichReport check_sandwich(const RealOperator& m, std::size_t copies, std::optional<double> omega_lower,
                              const ExtensionOptions& opt, double tol) {
    SandwichReport r;
    r.copies = copies;
    if (omega_lower) {
        r.omega_lower = *omega_lower;
    } else {
        r.omega_lower = omega_plus_alternating(m).value;
        bool oracle = m.layout.size() <= 3;
        for (std::size_t d : m.layout.dims()) oracle = oracle && d <= 3;
        if (oracle && m.layout.size() <= 2) r.omega_lower = std::max(r.omega_lower, omega_plus_grid(m, 200));
    }
    r.lambda_R = extension_lambda_max(m, copies, opt);
    r.lift_holds = r.omega_lower <= r.lambda_R + tol;
    if (copies >= 2) {
        r.lambda_previous = extension_lambda_max(m, copies - 1, opt);
        r.monotone_holds = r.lambda_R <= *r.lambda_previous + tol;
    }
    r.implied_epsilon = std::max(0.0, r.lambda_R - r.omega_lower);
    return r;
}

}  // namespace stoqext
