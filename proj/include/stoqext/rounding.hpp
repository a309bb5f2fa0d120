#pragma once

// Rounding separately bosonic states to nonnegative product witnesses.
//
// States live in compressed (occupation-number) coordinates of a
// SeparatelySymmetricSpace, so support on the symmetric subspaces holds by
// construction; conversions to and from full extended coordinates are
// provided for cross-checks.

#include <memory>
#include <string>
#include <vector>

#include "stoqext/distances.hpp"
#include "stoqext/product_value.hpp"
#include "stoqext/symmetric.hpp"

namespace stoqext {

class BosonicState {
public:
    using SpacePtr = std::shared_ptr<const SeparatelySymmetricSpace>;

    /// Unit vector in compressed coordinates (norm checked to 1e-10).
    static BosonicState pure(SpacePtr space, VectorXd compressed);
    /// Density matrix in compressed coordinates (symmetric, trace 1).
    static BosonicState mixed(SpacePtr space, MatrixXd density);
    /// Full-coordinate vector; throws if its weight outside the separately
    /// symmetric subspace exceeds `tol`.
    static BosonicState from_full_vector(SpacePtr space, const VectorXd& full, double tol = 1e-9);
    static BosonicState from_full_density(SpacePtr space, const MatrixXd& full, double tol = 1e-9);

    const SeparatelySymmetricSpace& space() const { return *space_; }
    const SpacePtr& space_ptr() const { return space_; }
    bool is_pure() const { return pure_; }
    const VectorXd& vector() const;
    MatrixXd density() const;

    VectorXd full_vector() const;
    MatrixXd full_density() const;

private:
    BosonicState(SpacePtr space, VectorXd v) : space_(std::move(space)), vec_(std::move(v)), pure_(true) {}
    BosonicState(SpacePtr space, MatrixXd rho) : space_(std::move(space)), rho_(std::move(rho)), pure_(false) {}

    SpacePtr space_;
    VectorXd vec_;
    MatrixXd rho_;
    bool pure_ = true;
};

/// ||(I - P) rho (I - P)||_tr for a full-coordinate state, P the separately
/// symmetric projector.
double support_violation(const SeparatelySymmetricSpace& space, const VectorXd& full);
double support_violation(const SeparatelySymmetricSpace& space, const MatrixXd& full_density);

/// Reduced state on the tested registers A_{1,1}, ..., A_{m-1,1}, A_m.
MatrixXd tested_marginal(const BosonicState& rho);
JointDistribution measured_distribution(const BosonicState& rho);
double tested_value(const BosonicState& rho, const RealOperator& m);
double tested_entropy(const BosonicState& rho);
double potential(const BosonicState& rho, const RealOperator& m, double mu);

struct DirectRoundResult {
    ProductWitness witness;  ///< x_i = sqrt(p_i)
    double gamma = 0.0;      ///< d_H(P, prod_i p_i)
    double tested_value = 0.0;
    double achieved_value = 0.0;
    bool bound_holds = false;  ///< achieved >= tested - 2 sqrt(2) gamma - 1e-9
};
DirectRoundResult direct_round(const BosonicState& rho, const RealOperator& m);

struct ConditionOutcome {
    std::size_t outcome = 0;
    double weight = 0.0;
    BosonicState residual;
};
/// Measures the first copy of `block` and relabels the remaining copies.
/// Zero-weight outcomes are omitted.
std::vector<ConditionOutcome> condition_step(const BosonicState& rho, std::size_t block);

struct RoundingSchedule {
    double epsilon = 1.0;
    double L = 1.0;      ///< max{1, sum_i log d_i}
    double delta = 0.0;  ///< epsilon / (4 sqrt(2) (m - 1))
    double mu = 0.0;     ///< epsilon / (4 L)
    std::size_t T = 1;   ///< ceil(128 L (m-1)^2 / epsilon^3)

    static RoundingSchedule from_epsilon(double epsilon, const RegisterLayout& base);
};

struct RoundingStep {
    std::size_t block = 0;
    double hellinger_gap = 0.0;  ///< d_H(P, p_i ⊗ p_rest) before conditioning
    std::size_t outcome = 0;
    double weight = 0.0;
    double tested_value = 0.0;  ///< of the kept residual
    double tested_entropy = 0.0;
    double potential = 0.0;
    // Per-step bookkeeping over all outcomes.
    double value_before = 0.0;
    double averaged_value = 0.0;  ///< sum_a w_a V(rho^a)
    double entropy_before = 0.0;
    double averaged_entropy = 0.0;  ///< sum_a w_a H_test(rho^a)
    double mutual_information = 0.0;
    double potential_before = 0.0;
    bool value_preserved = false;
    bool hypothesis = false;  ///< gap > delta + 1e-6
    bool entropy_drop_holds = true;
    bool potential_increase_holds = true;
    bool potential_nondecreasing = false;
};

struct RoundingTrace {
    std::vector<RoundingStep> steps;
    std::string stop_reason;  ///< "independent", "copies-exhausted" or "step-budget"
    std::vector<std::size_t> terminal_copies;
    double terminal_value = 0.0;
    double terminal_gamma = 0.0;
    ProductWitness witness;

    bool all_steps_hold() const;
};

struct AdaptiveRoundResult {
    ProductWitness witness;
    RoundingTrace trace;
    double initial_value = 0.0;
    double achieved_value = 0.0;
    double certified_loss = 0.0;  ///< initial_value - achieved_value
    /// 2 sqrt(2) (m-1) delta + mu L: the loss allowed when the loop stops on
    /// the independence test.
    double schedule_bound = 0.0;
    /// 2 sqrt(2) max(0, gamma - (m-1) delta): extra loss when copies ran out.
    double slack = 0.0;
    bool bound_holds = false;  ///< certified_loss <= schedule_bound + slack + 1e-9
};

AdaptiveRoundResult adaptive_round(const BosonicState& rho, const RealOperator& m, const RoundingSchedule& schedule);

}  // namespace stoqext
