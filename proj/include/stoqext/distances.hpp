#pragma once

// Classical distributions over product alphabets and the distances between
// them. All logarithms are natural.

#include <vector>

#include "stoqext/tensor.hpp"

namespace stoqext {

/// Probabilities below this are treated as exact zeros for support decisions.
inline constexpr double kSupportFloor = 1e-15;

class JointDistribution {
public:
    JointDistribution() = default;
    /// Validates nonnegativity and normalization (within `sum_tol`).
    JointDistribution(RegisterLayout layout, VectorXd probs, double sum_tol = 1e-10);

    static JointDistribution point_mass(const RegisterLayout& layout, std::size_t index);
    static JointDistribution uniform(const RegisterLayout& layout);

    const RegisterLayout& layout() const { return layout_; }
    const VectorXd& probs() const { return probs_; }
    double operator[](std::size_t i) const { return probs_(static_cast<Eigen::Index>(i)); }
    std::size_t coordinates() const { return layout_.size(); }

private:
    RegisterLayout layout_;
    VectorXd probs_;
};

JointDistribution marginal(const JointDistribution& p, const std::vector<std::size_t>& coords);
JointDistribution product(const JointDistribution& a, const JointDistribution& b);
JointDistribution product_of_marginals(const JointDistribution& p);

/// Affinity sum_x sqrt(p(x) q(x)).
double hellinger_affinity(const JointDistribution& p, const JointDistribution& q);
/// d_H with d_H^2 = 1 - affinity; lies in [0, 1].
double hellinger(const JointDistribution& p, const JointDistribution& q);
/// D(p || q); +infinity when p is not absolutely continuous w.r.t. q.
double kl(const JointDistribution& p, const JointDistribution& q);
double entropy(const JointDistribution& p);
double mutual_information(const JointDistribution& p, const std::vector<std::size_t>& coords_a,
                          const std::vector<std::size_t>& coords_b);

/// d_H(P, p_i ⊗ p_rest) where p_rest is the marginal on every coordinate but i.
/// The reference distribution is laid out in P's coordinate order.
double hellinger_to_split(const JointDistribution& p, std::size_t coord);

struct HellingerKlReport {
    double kl = 0.0;
    double hellinger = 0.0;
    bool holds = false;
};
HellingerKlReport check_hellinger_kl(const JointDistribution& p, const JointDistribution& q);

struct TensorizationReport {
    std::vector<double> per_coordinate;  ///< d_H(P, p_i ⊗ p_rest) for i < m-1
    double global = 0.0;                 ///< d_H(P, prod_i p_i)
    bool hypothesis = false;             ///< every per-coordinate distance <= delta
    bool holds = false;
};
TensorizationReport check_tensorization(const JointDistribution& p, double delta);

}  // namespace stoqext
