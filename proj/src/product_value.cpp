#include "stoqext/product_value.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <numbers>
#include <random>
#include <stdexcept>

namespace stoqext {

ProductWitness::ProductWitness(std::vector<VectorXd> factors, double tol) : factors_(std::move(factors)) {
    for (const VectorXd& x : factors_) {
        if (x.size() == 0) throw std::invalid_argument("ProductWitness: empty factor");
        if (x.minCoeff() < -tol) throw std::invalid_argument("ProductWitness: negative factor entry");
        if (std::abs(x.norm() - 1.0) > tol) throw std::invalid_argument("ProductWitness: factor is not a unit vector");
    }
}

ProductWitness ProductWitness::unchecked(std::vector<VectorXd> factors) {
    ProductWitness w;
    w.factors_ = std::move(factors);
    return w;
}

VectorXd ProductWitness::kron() const {
    VectorXd acc = VectorXd::Ones(1);
    for (const VectorXd& x : factors_) acc = tensor<double>(acc, x);
    return acc;
}

ProductWitness ProductWitness::abs() const {
    std::vector<VectorXd> out;
    for (const VectorXd& x : factors_) out.push_back(x.cwiseAbs());
    return unchecked(std::move(out));
}

bool ProductWitness::matches(const RegisterLayout& layout) const {
    if (layout.size() != factors_.size()) return false;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        if (static_cast<std::size_t>(factors_[i].size()) != layout.dim(i)) return false;
    return true;
}

double product_value(const RealOperator& m, const ProductWitness& w) {
    if (!w.matches(m.layout)) throw std::invalid_argument("product_value: witness does not match layout");
    const VectorXd v = w.kron();
    return v.dot(m.matrix * v);
}

namespace {

std::vector<VectorXd> nonneg_sphere_grid(std::size_t d, std::size_t g) {
    const std::size_t angles = d - 1;
    std::size_t count = 1;
    for (std::size_t k = 0; k < angles; ++k) count *= g;
    std::vector<VectorXd> points;
    points.reserve(count);
    std::vector<std::size_t> idx(angles, 0);
    const double step = g > 1 ? (std::numbers::pi / 2.0) / static_cast<double>(g - 1) : 0.0;
    for (std::size_t c = 0; c < count; ++c) {
        std::size_t rem = c;
        for (std::size_t k = 0; k < angles; ++k) {
            idx[k] = rem % g;
            rem /= g;
        }
        VectorXd x(static_cast<Eigen::Index>(d));
        double s = 1.0;
        for (std::size_t k = 0; k < angles; ++k) {
            const double th = step * static_cast<double>(idx[k]);
            x(static_cast<Eigen::Index>(k)) = s * std::cos(th);
            s *= std::sin(th);
        }
        x(static_cast<Eigen::Index>(d - 1)) = s;
        points.push_back(x.cwiseAbs());
    }
    return points;
}

/// Contracts the leading register of `k` (dims `dims[level..]`) with x on both sides.
MatrixXd contract_leading(const MatrixXd& k, const VectorXd& x, std::size_t rest) {
    const auto d = x.size();
    const auto r = static_cast<Eigen::Index>(rest);
    MatrixXd out = MatrixXd::Zero(r, r);
    for (Eigen::Index a = 0; a < d; ++a) {
        if (x(a) == 0.0) continue;
        for (Eigen::Index b = 0; b < d; ++b) {
            if (x(b) == 0.0) continue;
            out.noalias() += (x(a) * x(b)) * k.block(a * r, b * r, r, r);
        }
    }
    return out;
}

/// Exact max of x^T K x over nonnegative unit x: the maximizer lies in the
/// relative interior of some face {x_S > 0}, where it is a positive
/// eigenvector of K_SS. Enumerates every support S.
double orthant_max(const MatrixXd& k) {
    const auto d = k.rows();
    double best = -std::numeric_limits<double>::infinity();
    for (unsigned mask = 1; mask < (1u << d); ++mask) {
        std::vector<Eigen::Index> support;
        for (Eigen::Index a = 0; a < d; ++a)
            if (mask & (1u << a)) support.push_back(a);
        const auto n = static_cast<Eigen::Index>(support.size());
        MatrixXd sub(n, n);
        for (Eigen::Index i = 0; i < n; ++i)
            for (Eigen::Index j = 0; j < n; ++j) sub(i, j) = k(support[i], support[j]);
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(sub);
        for (Eigen::Index c = 0; c < n; ++c) {
            VectorXd v = es.eigenvectors().col(c);
            if (v.sum() < 0) v = -v;
            if (v.minCoeff() < -1e-12) continue;
            best = std::max(best, es.eigenvalues()(c));
        }
    }
    return best;
}

double grid_search(const MatrixXd& k, const std::vector<std::vector<VectorXd>>& grids,
                   const std::vector<std::size_t>& dims, std::size_t level) {
    double best = -std::numeric_limits<double>::infinity();
    if (level + 1 == dims.size()) return orthant_max(k);
    std::size_t rest = 1;
    for (std::size_t j = level + 1; j < dims.size(); ++j) rest *= dims[j];
    for (const VectorXd& x : grids[level])
        best = std::max(best, grid_search(contract_leading(k, x, rest), grids, dims, level + 1));
    return best;
}

}  // namespace

double omega_plus_grid(const RealOperator& m, std::size_t grid_points) {
    const auto& dims = m.layout.dims();
    if (dims.size() > 3) throw std::domain_error("omega_plus_grid: oracle regime needs m <= 3");
    for (std::size_t d : dims)
        if (d > 3) throw std::domain_error("omega_plus_grid: oracle regime needs every d_i <= 3");
    if (grid_points == 0) throw std::invalid_argument("omega_plus_grid: grid_points must be >= 1");
    std::vector<std::vector<VectorXd>> grids;
    for (std::size_t i = 0; i + 1 < dims.size(); ++i) grids.push_back(nonneg_sphere_grid(dims[i], grid_points));
    return grid_search(m.matrix, grids, dims, 0);
}

double grid_tolerance(const RealOperator& m, std::size_t grid_points) {
    return 4.0 * static_cast<double>(m.layout.size()) * std::numbers::pi / static_cast<double>(grid_points);
}

MatrixXd induced_matrix(const RealOperator& m, const std::vector<VectorXd>& factors, std::size_t i) {
    const auto d = static_cast<Eigen::Index>(m.layout.dim(i));
    MatrixXd u(m.dim(), d);
    for (Eigen::Index a = 0; a < d; ++a) {
        VectorXd acc = VectorXd::Ones(1);
        for (std::size_t j = 0; j < factors.size(); ++j)
            acc = tensor<double>(acc, j == i ? VectorXd(VectorXd::Unit(d, a)) : factors[j]);
        u.col(a) = acc;
    }
    return u.transpose() * m.matrix * u;
}

VectorXd perron_vector(const MatrixXd& k, const VectorXd& previous) {
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(k);
    const Eigen::Index d = k.rows();
    const double top = es.eigenvalues()(d - 1);
    const double tol = 1e-10 * std::max(1.0, std::abs(top));
    Eigen::Index first = d - 1;
    while (first > 0 && es.eigenvalues()(first - 1) >= top - tol) --first;
    const MatrixXd space = es.eigenvectors().rightCols(d - first);
    VectorXd v;
    if (space.cols() == 1) {
        v = space.col(0).cwiseAbs();
    } else {
        v = (space * (space.transpose() * previous)).cwiseAbs();
        if (v.norm() < 1e-12) v = space.col(0).cwiseAbs();
    }
    return v / v.norm();
}

AlternatingResult omega_plus_alternating(const RealOperator& m, const AlternatingOptions& opt) {
    if (!is_symmetric(m.matrix)) throw std::invalid_argument("omega_plus_alternating: operator is not symmetric");
    if (!is_entrywise_nonneg(m.matrix, 0.0))
        throw std::invalid_argument("omega_plus_alternating: operator is not entrywise nonnegative");
    if (opt.restarts < 1) throw std::invalid_argument("omega_plus_alternating: need at least one restart");

    const std::size_t regs = m.layout.size();
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    AlternatingResult result;
    result.value = -std::numeric_limits<double>::infinity();

    for (int restart = 0; restart < opt.restarts; ++restart) {
        std::vector<VectorXd> x;
        for (std::size_t i = 0; i < regs; ++i) {
            VectorXd v(static_cast<Eigen::Index>(m.layout.dim(i)));
            for (Eigen::Index a = 0; a < v.size(); ++a) v(a) = unif(rng) + 1e-3;
            x.push_back(v / v.norm());
        }
        std::vector<double> hist;
        double value = product_value(m, ProductWitness::unchecked(x));
        for (int sweep = 0; sweep < opt.max_sweeps; ++sweep) {
            const double before = value;
            for (std::size_t i = 0; i < regs; ++i) {
                const MatrixXd k = induced_matrix(m, x, i);
                x[i] = perron_vector(k, x[i]);
                value = x[i].dot(k * x[i]);
                if (opt.record_history) hist.push_back(value);
            }
            ++result.total_sweeps;
            if (value - before <= opt.stagnation_tol) break;
        }
        if (opt.record_history) result.history.push_back(std::move(hist));
        ProductWitness w(x);
        const double exact = product_value(m, w);
        if (exact > result.value) {
            result.value = exact;
            result.witness = std::move(w);
        }
    }
    return result;
}

}  // namespace stoqext
