#include "stoqext/rounding.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

namespace stoqext {

namespace {

constexpr double kNormTol = 1e-10;
constexpr double kSupportTol = 1e-9;

void require_space(const BosonicState::SpacePtr& space) {
    if (!space) throw std::invalid_argument("BosonicState: null space");
}

/// Y^T Y with Y the (rest x tested) reshape of F psi.
MatrixXd pure_marginal(const SeparatelySymmetricSpace& space, const VectorXd& psi) {
    const VectorXd y = space.first_copy_split() * psi;
    const auto rest = static_cast<Eigen::Index>(space.rest_dim());
    const auto tested = static_cast<Eigen::Index>(space.base().total_dim());
    Eigen::Map<const MatrixXd> ym(y.data(), rest, tested);
    return ym.transpose() * ym;
}

}  // namespace

BosonicState BosonicState::pure(SpacePtr space, VectorXd compressed) {
    require_space(space);
    if (static_cast<std::size_t>(compressed.size()) != space->dim())
        throw std::invalid_argument("BosonicState::pure: dimension mismatch");
    if (std::abs(compressed.norm() - 1.0) > kNormTol)
        throw std::invalid_argument("BosonicState::pure: vector is not normalized");
    return BosonicState(std::move(space), std::move(compressed));
}

BosonicState BosonicState::mixed(SpacePtr space, MatrixXd density) {
    require_space(space);
    const auto n = static_cast<Eigen::Index>(space->dim());
    if (density.rows() != n || density.cols() != n)
        throw std::invalid_argument("BosonicState::mixed: dimension mismatch");
    if (!is_symmetric(density, 1e-10)) throw std::invalid_argument("BosonicState::mixed: density not symmetric");
    if (std::abs(density.trace() - 1.0) > kNormTol) throw std::invalid_argument("BosonicState::mixed: trace != 1");
    return BosonicState(std::move(space), std::move(density));
}

BosonicState BosonicState::from_full_vector(SpacePtr space, const VectorXd& full, double tol) {
    require_space(space);
    if (static_cast<std::size_t>(full.size()) != space->full_layout().total_dim())
        throw std::invalid_argument("BosonicState::from_full_vector: dimension mismatch");
    if (support_violation(*space, full) > tol)
        throw std::domain_error("BosonicState: state is not supported on the separately symmetric subspace");
    VectorXd c = space->isometry().transpose() * full;
    return pure(std::move(space), std::move(c));
}

BosonicState BosonicState::from_full_density(SpacePtr space, const MatrixXd& full, double tol) {
    require_space(space);
    const auto n = static_cast<Eigen::Index>(space->full_layout().total_dim());
    if (full.rows() != n || full.cols() != n)
        throw std::invalid_argument("BosonicState::from_full_density: dimension mismatch");
    if (support_violation(*space, full) > tol)
        throw std::domain_error("BosonicState: state is not supported on the separately symmetric subspace");
    const SparseMatrixXd v = space->isometry();
    const MatrixXd vt_rho = v.transpose() * full;
    MatrixXd c = (vt_rho * v).eval();
    c = (c + c.transpose()).eval() / 2.0;
    return mixed(std::move(space), std::move(c));
}

const VectorXd& BosonicState::vector() const {
    if (!pure_) throw std::logic_error("BosonicState::vector: state is mixed");
    return vec_;
}

MatrixXd BosonicState::density() const { return pure_ ? MatrixXd(vec_ * vec_.transpose()) : rho_; }

VectorXd BosonicState::full_vector() const { return space_->isometry() * vector(); }

MatrixXd BosonicState::full_density() const {
    const SparseMatrixXd v = space_->isometry();
    const MatrixXd vr = v * density();
    return vr * v.transpose();
}

double support_violation(const SeparatelySymmetricSpace& space, const VectorXd& full) {
    const VectorXd c = space.isometry().transpose() * full;
    return std::max(0.0, full.squaredNorm() - c.squaredNorm());
}

double support_violation(const SeparatelySymmetricSpace& space, const MatrixXd& full_density) {
    // (I - P) rho (I - P) is PSD for PSD rho, so its trace norm is its trace.
    const SparseMatrixXd v = space.isometry();
    const MatrixXd vt_rho = v.transpose() * full_density;
    const MatrixXd inner = vt_rho * v;
    return std::max(0.0, full_density.trace() - inner.trace());
}

MatrixXd tested_marginal(const BosonicState& rho) {
    const SeparatelySymmetricSpace& space = rho.space();
    if (rho.is_pure()) return pure_marginal(space, rho.vector());
    Eigen::SelfAdjointEigenSolver<MatrixXd> es(rho.density());
    const auto t = static_cast<Eigen::Index>(space.base().total_dim());
    MatrixXd acc = MatrixXd::Zero(t, t);
    for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
        const double lam = es.eigenvalues()(k);
        if (lam == 0.0) continue;
        acc += lam * pure_marginal(space, es.eigenvectors().col(k));
    }
    return acc;
}

JointDistribution measured_distribution(const BosonicState& rho) {
    VectorXd p = tested_marginal(rho).diagonal();
    for (Eigen::Index i = 0; i < p.size(); ++i) {
        if (p(i) < -kSupportTol) throw std::domain_error("measured_distribution: negative probability");
        p(i) = std::max(0.0, p(i));
    }
    return JointDistribution(rho.space().base(), std::move(p), 1e-9);
}

double tested_value(const BosonicState& rho, const RealOperator& m) {
    if (!(m.layout == rho.space().base())) throw std::invalid_argument("tested_value: layout mismatch");
    return (m.matrix.cwiseProduct(tested_marginal(rho))).sum();
}

double tested_entropy(const BosonicState& rho) { return entropy(measured_distribution(rho)); }

double potential(const BosonicState& rho, const RealOperator& m, double mu) {
    if (mu < 0.0) throw std::invalid_argument("potential: mu must be >= 0");
    return tested_value(rho, m) - mu * tested_entropy(rho);
}

DirectRoundResult direct_round(const BosonicState& rho, const RealOperator& m) {
    if (!is_entrywise_nonneg(m.matrix, 0.0)) throw std::invalid_argument("direct_round: M has negative entries");
    if (!is_symmetric(m.matrix, 1e-10)) throw std::invalid_argument("direct_round: M is not symmetric");
    if (spectral_norm(m.matrix) > 1.0 + 1e-9) throw std::invalid_argument("direct_round: ||M|| > 1");
    const JointDistribution p = measured_distribution(rho);
    std::vector<VectorXd> factors;
    for (std::size_t i = 0; i < p.coordinates(); ++i) {
        VectorXd x = marginal(p, {i}).probs().cwiseSqrt();
        x /= x.norm();  // renormalize away rounding in the marginal sums
        factors.push_back(std::move(x));
    }
    DirectRoundResult r;
    r.witness = ProductWitness(std::move(factors), 1e-9);
    r.gamma = hellinger(p, product_of_marginals(p));
    r.tested_value = tested_value(rho, m);
    r.achieved_value = product_value(m, r.witness);
    r.bound_holds = r.achieved_value >= r.tested_value - 2.0 * std::sqrt(2.0) * r.gamma - 1e-9;
    return r;
}

std::vector<ConditionOutcome> condition_step(const BosonicState& rho, std::size_t block) {
    const SeparatelySymmetricSpace& space = rho.space();
    auto target = std::make_shared<const SeparatelySymmetricSpace>(space.base(), space.copies_after_removal(block));
    std::vector<ConditionOutcome> out;
    for (std::size_t a = 0; a < space.base().dim(block); ++a) {
        const SparseMatrixXd k = space.remove_copy(block, a);
        if (rho.is_pure()) {
            VectorXd phi = k * rho.vector();
            const double w = phi.squaredNorm();
            if (w < kSupportFloor) continue;
            phi /= std::sqrt(w);
            out.push_back({a, w, BosonicState::pure(target, std::move(phi))});
        } else {
            const MatrixXd kr = k * rho.density();
            MatrixXd sigma = kr * k.transpose();
            const double w = sigma.trace();
            if (w < kSupportFloor) continue;
            sigma /= w;
            sigma = (sigma + sigma.transpose()).eval() / 2.0;
            out.push_back({a, w, BosonicState::mixed(target, std::move(sigma))});
        }
    }
    return out;
}

RoundingSchedule RoundingSchedule::from_epsilon(double epsilon, const RegisterLayout& base) {
    if (!(epsilon > 0.0 && epsilon <= 1.0)) throw std::invalid_argument("RoundingSchedule: epsilon must be in (0,1]");
    if (base.size() < 2) throw std::invalid_argument("RoundingSchedule: need m >= 2");
    RoundingSchedule s;
    s.epsilon = epsilon;
    double logs = 0.0;
    for (std::size_t d : base.dims()) logs += std::log(static_cast<double>(d));
    s.L = std::max(1.0, logs);
    const double mm1 = static_cast<double>(base.size() - 1);
    s.delta = epsilon / (4.0 * std::sqrt(2.0) * mm1);
    s.mu = epsilon / (4.0 * s.L);
    s.T = static_cast<std::size_t>(std::ceil(128.0 * s.L * mm1 * mm1 / (epsilon * epsilon * epsilon)));
    return s;
}

bool RoundingTrace::all_steps_hold() const {
    return std::all_of(steps.begin(), steps.end(), [](const RoundingStep& s) {
        return s.value_preserved && s.entropy_drop_holds && s.potential_increase_holds && s.potential_nondecreasing;
    });
}

AdaptiveRoundResult adaptive_round(const BosonicState& rho, const RealOperator& m, const RoundingSchedule& schedule) {
    const std::size_t mm = m.layout.size();
    AdaptiveRoundResult result;
    result.initial_value = tested_value(rho, m);
    BosonicState state = rho;
    const double tol = 1e-9;
    for (;;) {
        const JointDistribution p = measured_distribution(state);
        std::vector<double> gaps(mm - 1);
        for (std::size_t i = 0; i + 1 < mm; ++i) gaps[i] = hellinger_to_split(p, i);
        std::optional<std::size_t> pick;
        bool any_violation = false;
        for (std::size_t i = 0; i + 1 < mm; ++i) {
            if (gaps[i] <= schedule.delta) continue;
            any_violation = true;
            if (state.space().copies()[i] < 2) continue;
            if (!pick || gaps[i] > gaps[*pick]) pick = i;
        }
        if (!any_violation) {
            result.trace.stop_reason = "independent";
            break;
        }
        if (result.trace.steps.size() >= schedule.T) {
            result.trace.stop_reason = "step-budget";
            break;
        }
        if (!pick) {
            result.trace.stop_reason = "copies-exhausted";
            break;
        }

        RoundingStep step;
        step.block = *pick;
        step.hellinger_gap = gaps[*pick];
        step.value_before = tested_value(state, m);
        step.entropy_before = entropy(p);
        step.potential_before = step.value_before - schedule.mu * step.entropy_before;
        std::vector<std::size_t> others;
        for (std::size_t j = 0; j < mm; ++j)
            if (j != *pick) others.push_back(j);
        step.mutual_information = mutual_information(p, {*pick}, others);

        std::vector<ConditionOutcome> outcomes = condition_step(state, *pick);
        std::size_t best = 0;
        double best_phi = -std::numeric_limits<double>::infinity();
        for (std::size_t k = 0; k < outcomes.size(); ++k) {
            const double v = tested_value(outcomes[k].residual, m);
            const double h = tested_entropy(outcomes[k].residual);
            step.averaged_value += outcomes[k].weight * v;
            step.averaged_entropy += outcomes[k].weight * h;
            const double phi = v - schedule.mu * h;
            if (phi > best_phi) {
                best_phi = phi;
                best = k;
                step.tested_value = v;
                step.tested_entropy = h;
            }
        }
        step.outcome = outcomes[best].outcome;
        step.weight = outcomes[best].weight;
        step.potential = best_phi;
        step.value_preserved = std::abs(step.averaged_value - step.value_before) <= tol;
        step.hypothesis = step.hellinger_gap > schedule.delta + 1e-6;
        const double quantum = 2.0 * schedule.delta * schedule.delta;
        if (step.hypothesis) {
            step.entropy_drop_holds = step.entropy_before - step.averaged_entropy >= quantum - tol;
            step.potential_increase_holds = step.potential >= step.potential_before + schedule.mu * quantum - tol;
        }
        step.potential_nondecreasing = step.potential >= step.potential_before - tol;
        result.trace.steps.push_back(step);
        state = std::move(outcomes[best].residual);
    }

    const DirectRoundResult dr = direct_round(state, m);
    result.witness = dr.witness;
    result.trace.witness = dr.witness;
    result.trace.terminal_copies = state.space().copies();
    result.trace.terminal_value = dr.tested_value;
    result.trace.terminal_gamma = dr.gamma;
    result.achieved_value = dr.achieved_value;
    result.certified_loss = result.initial_value - result.achieved_value;
    const double mm1 = static_cast<double>(mm - 1);
    result.schedule_bound = 2.0 * std::sqrt(2.0) * mm1 * schedule.delta + schedule.mu * schedule.L;
    result.slack = 2.0 * std::sqrt(2.0) * std::max(0.0, dr.gamma - mm1 * schedule.delta);
    result.bound_holds = result.certified_loss <= result.schedule_bound + result.slack + tol;
    return result;
}

}  // namespace stoqext
