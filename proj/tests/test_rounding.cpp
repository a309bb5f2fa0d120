#include <gtest/gtest.h>

#include <cmath>

#include "stoqext/extension.hpp"
#include "stoqext/io.hpp"
#include "stoqext/rounding.hpp"
#include "stoqext/spectrum.hpp"
#include "test_util.hpp"

using namespace stoqext;
using namespace testutil;

namespace {

using SpacePtr = BosonicState::SpacePtr;

SpacePtr make_space(RegisterLayout base, std::vector<std::size_t> copies) {
    return std::make_shared<const SeparatelySymmetricSpace>(std::move(base), std::move(copies));
}

BosonicState random_state(const SpacePtr& s, std::uint64_t seed, bool mixed = false) {
    if (!mixed) return BosonicState::pure(s, random_unit(static_cast<Eigen::Index>(s->dim()), seed));
    MatrixXd rho = MatrixXd::Zero(static_cast<Eigen::Index>(s->dim()), static_cast<Eigen::Index>(s->dim()));
    for (int k = 0; k < 3; ++k) {
        const VectorXd v = random_unit(static_cast<Eigen::Index>(s->dim()), seed * 7 + k);
        rho += (k + 1) * v * v.transpose();
    }
    rho /= rho.trace();
    return BosonicState::mixed(s, rho);
}

/// Tested marginal from full coordinates by direct summation over the
/// untested digits.
MatrixXd marginal_oracle(const SeparatelySymmetricSpace& s, const MatrixXd& full_rho) {
    const std::vector<std::size_t> dims = s.full_layout().dims();
    const std::vector<std::size_t> tested = s.tested_positions();
    std::vector<std::size_t> tdims;
    for (std::size_t p : tested) tdims.push_back(dims[p]);
    const std::size_t n = product(dims), t = product(tdims);
    MatrixXd out = MatrixXd::Zero(static_cast<Eigen::Index>(t), static_cast<Eigen::Index>(t));
    auto split = [&](std::size_t x, std::size_t& alpha, std::vector<std::size_t>& rest) {
        auto d = digits_of(x, dims);
        std::vector<std::size_t> td;
        for (std::size_t p : tested) {
            td.push_back(d[p]);
            d[p] = 0;
        }
        alpha = index_of(td, tdims);
        rest = d;
    };
    for (std::size_t x = 0; x < n; ++x)
        for (std::size_t y = 0; y < n; ++y) {
            std::size_t ax, ay;
            std::vector<std::size_t> rx, ry;
            split(x, ax, rx);
            split(y, ay, ry);
            if (rx != ry) continue;
            out(static_cast<Eigen::Index>(ax), static_cast<Eigen::Index>(ay)) +=
                full_rho(static_cast<Eigen::Index>(x), static_cast<Eigen::Index>(y));
        }
    return out;
}

/// (<a| on the first copy of `block`) applied in full coordinates.
VectorXd condition_oracle(const SeparatelySymmetricSpace& s, const VectorXd& full, std::size_t block, std::size_t a) {
    const std::vector<std::size_t> dims = s.full_layout().dims();
    const std::size_t pos = s.tested_positions()[block];
    std::vector<std::size_t> rdims = dims;
    rdims.erase(rdims.begin() + static_cast<std::ptrdiff_t>(pos));
    VectorXd out = VectorXd::Zero(static_cast<Eigen::Index>(product(rdims)));
    for (std::size_t x = 0; x < product(dims); ++x) {
        auto d = digits_of(x, dims);
        if (d[pos] != a) continue;
        d.erase(d.begin() + static_cast<std::ptrdiff_t>(pos));
        out(static_cast<Eigen::Index>(index_of(d, rdims))) = full(static_cast<Eigen::Index>(x));
    }
    return out;
}

BosonicState lifted_product(const SpacePtr& s, const ProductWitness& w) {
    VectorXd acc = VectorXd::Ones(1);
    for (std::size_t i = 0; i < s->blocks(); ++i) acc = tensor<double>(acc, s->block(i).lift(w[i]));
    return BosonicState::pure(s, tensor<double>(acc, w[w.size() - 1]));
}

}  // namespace

TEST(Rounding, TestedMarginalMatchesFullCoordinateOracle) {
    const std::vector<std::pair<RegisterLayout, std::vector<std::size_t>>> cases{
        {RegisterLayout{2, 2}, {3}}, {RegisterLayout{3, 2}, {2}}, {RegisterLayout{2, 2, 2}, {2, 3}}};
    std::uint64_t seed = 0;
    for (const auto& [base, copies] : cases) {
        const SpacePtr s = make_space(base, copies);
        for (bool mixed : {false, true}) {
            const BosonicState rho = random_state(s, ++seed, mixed);
            const MatrixXd oracle = marginal_oracle(*s, rho.full_density());
            EXPECT_LE((tested_marginal(rho) - oracle).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_NEAR(measured_distribution(rho).probs().sum(), 1.0, 1e-12);
        }
    }
}

TEST(Rounding, FullCoordinateRoundTripAndSupportCheck) {
    const SpacePtr s = make_space(RegisterLayout{2, 2}, {2});
    const BosonicState rho = random_state(s, 3);
    const BosonicState back = BosonicState::from_full_vector(s, rho.full_vector());
    EXPECT_LE((back.vector() - rho.vector()).cwiseAbs().maxCoeff(), 1e-14);
    EXPECT_LE(support_violation(*s, rho.full_vector()), 1e-14);
    // |0,1> ⊗ |0> on a two-copy block is not symmetric.
    VectorXd bad = VectorXd::Zero(8);
    bad(0b010) = 1.0;
    EXPECT_NEAR(support_violation(*s, bad), 0.5, 1e-12);
    EXPECT_THROW(BosonicState::from_full_vector(s, bad), std::domain_error);
    EXPECT_THROW(BosonicState::pure(s, VectorXd::Ones(static_cast<Eigen::Index>(s->dim()))), std::invalid_argument);
    const MatrixXd full = rho.full_density();
    EXPECT_LE((BosonicState::from_full_density(s, full).density() - rho.density()).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(Rounding, ConditionStepMatchesFullCoordinateOracle) {
    const SpacePtr s = make_space(RegisterLayout{2, 3, 2}, {3, 2});
    const BosonicState rho = random_state(s, 17);
    const VectorXd full = rho.full_vector();
    const RealOperator m = random_nonneg_psd(s->base(), 4);
    for (std::size_t block = 0; block < 2; ++block) {
        const auto outs = condition_step(rho, block);
        double wsum = 0.0, vavg = 0.0;
        for (const auto& o : outs) {
            const VectorXd phi = condition_oracle(*s, full, block, o.outcome);
            EXPECT_NEAR(o.weight, phi.squaredNorm(), 1e-12);
            EXPECT_LE((o.residual.full_vector() - phi / std::sqrt(o.weight)).cwiseAbs().maxCoeff(), 1e-12);
            EXPECT_LE(support_violation(o.residual.space(), o.residual.full_vector()), 1e-9);
            EXPECT_EQ(o.residual.space().copies()[block], s->copies()[block] - 1);
            wsum += o.weight;
            vavg += o.weight * tested_value(o.residual, m);
        }
        EXPECT_NEAR(wsum, 1.0, 1e-12);
        EXPECT_NEAR(vavg, tested_value(rho, m), 1e-9);
    }
    EXPECT_THROW(condition_step(BosonicState::pure(make_space(RegisterLayout{2, 2}, {1}), random_unit(4, 1)), 0),
                 std::domain_error);
}

TEST(Rounding, MixedConditioningMatchesPureDecomposition) {
    const SpacePtr s = make_space(RegisterLayout{2, 2}, {3});
    const VectorXd u = random_unit(static_cast<Eigen::Index>(s->dim()), 1);
    const VectorXd v = random_unit(static_cast<Eigen::Index>(s->dim()), 2);
    const BosonicState mixed = BosonicState::mixed(s, 0.25 * u * u.transpose() + 0.75 * v * v.transpose());
    const auto mo = condition_step(mixed, 0);
    const auto uo = condition_step(BosonicState::pure(s, u), 0);
    const auto vo = condition_step(BosonicState::pure(s, v), 0);
    ASSERT_EQ(mo.size(), 2u);
    for (std::size_t a = 0; a < 2; ++a) {
        const double w = 0.25 * uo[a].weight + 0.75 * vo[a].weight;
        EXPECT_NEAR(mo[a].weight, w, 1e-12);
        const MatrixXd expect = (0.25 * uo[a].weight * uo[a].residual.density() +
                                 0.75 * vo[a].weight * vo[a].residual.density()) / w;
        EXPECT_LE((mo[a].residual.density() - expect).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Rounding, LiftedProductStates) {
    const SpacePtr s = make_space(RegisterLayout{2, 3}, {3});
    const ProductWitness w({random_unit(2, 1, true), random_unit(3, 2, true)});
    const BosonicState rho = lifted_product(s, w);
    const RealOperator m = random_nonneg_psd(s->base(), 9);
    EXPECT_NEAR(tested_value(rho, m), product_value(m, w), 1e-12);
    const DirectRoundResult d = direct_round(rho, m);
    EXPECT_NEAR(d.gamma, 0.0, 1e-7);
    EXPECT_NEAR(d.achieved_value, d.tested_value, 1e-12);
    for (std::size_t i = 0; i < 2; ++i) EXPECT_LE((d.witness[i] - w[i]).cwiseAbs().maxCoeff(), 1e-12);
    // Conditioning leaves the same product with one copy fewer.
    const SpacePtr s2 = make_space(RegisterLayout{2, 3}, {2});
    const BosonicState expect = lifted_product(s2, w);
    for (const auto& o : condition_step(rho, 0)) {
        EXPECT_NEAR(o.weight, w[0](static_cast<Eigen::Index>(o.outcome)) * w[0](static_cast<Eigen::Index>(o.outcome)),
                    1e-12);
        EXPECT_LE((o.residual.vector() - expect.vector()).cwiseAbs().maxCoeff(), 1e-12);
    }
    const AdaptiveRoundResult r = adaptive_round(rho, m, RoundingSchedule::from_epsilon(0.5, s->base()));
    EXPECT_TRUE(r.trace.steps.empty());
    EXPECT_EQ(r.trace.stop_reason, "independent");
    EXPECT_NEAR(r.achieved_value, r.initial_value, 1e-12);
}

TEST(Rounding, CorrelatedStateTakesOneStep) {
    // (|0^R>|0> + |1^R>|1>)/sqrt(2) against the maximally entangled projector.
    const std::size_t r = 3;
    const SpacePtr s = make_space(RegisterLayout{2, 2}, {r});
    VectorXd psi = VectorXd::Zero(static_cast<Eigen::Index>(s->dim()));
    psi(0) = psi(static_cast<Eigen::Index>(s->dim() - 1)) = 1.0 / std::sqrt(2.0);  // occupations (R,0),a=0 and (0,R),a=1
    const BosonicState rho = BosonicState::pure(s, psi);
    const RealOperator m = maximally_entangled_projector(2);
    // The other copies decohere the tested pair: rho_test = (|00><00| + |11><11|) / 2.
    EXPECT_NEAR(tested_value(rho, m), 0.5, 1e-12);
    RoundingSchedule sched = RoundingSchedule::from_epsilon(1.0, s->base());
    sched.delta = 0.3;
    const AdaptiveRoundResult res = adaptive_round(rho, m, sched);
    ASSERT_EQ(res.trace.steps.size(), 1u);
    const RoundingStep& st = res.trace.steps[0];
    EXPECT_NEAR(st.hellinger_gap, std::sqrt(1.0 - 1.0 / std::sqrt(2.0)), 1e-12);
    EXPECT_EQ(st.outcome, 0u);
    EXPECT_NEAR(st.weight, 0.5, 1e-12);
    EXPECT_NEAR(st.tested_value, 0.5, 1e-12);
    EXPECT_NEAR(st.entropy_before - st.averaged_entropy, std::log(2.0), 1e-12);
    EXPECT_EQ(res.trace.stop_reason, "independent");
    EXPECT_NEAR(res.trace.terminal_gamma, 0.0, 1e-12);
    EXPECT_NEAR(res.achieved_value, 0.5, 1e-12);
    EXPECT_TRUE(res.trace.all_steps_hold());
}

TEST(Rounding, ScheduleArithmetic) {
    const RoundingSchedule s = RoundingSchedule::from_epsilon(0.5, RegisterLayout{2, 2});
    EXPECT_NEAR(s.L, 2.0 * std::log(2.0), 1e-15);
    EXPECT_NEAR(s.delta, 0.5 / (4.0 * std::sqrt(2.0)), 1e-15);
    EXPECT_NEAR(s.mu, 0.5 / (8.0 * std::log(2.0)), 1e-15);
    EXPECT_EQ(s.T, 1420u);  // ceil(128 * 2 ln 2 / 0.125) = ceil(1419.57)
    EXPECT_DOUBLE_EQ(RoundingSchedule::from_epsilon(0.5, RegisterLayout{1, 2}).L, 1.0);
    EXPECT_THROW(RoundingSchedule::from_epsilon(0.0, RegisterLayout{2, 2}), std::invalid_argument);
}

TEST(Rounding, DirectRoundingBoundProperty) {
    std::uint64_t seed = 0;
    for (int k = 0; k < 200; ++k) {
        const RegisterLayout base = k % 3 == 0 ? RegisterLayout{2, 2} : (k % 3 == 1 ? RegisterLayout{3, 2} : RegisterLayout{2, 2, 2});
        const SpacePtr s = make_space(base, std::vector<std::size_t>(base.size() - 1, 1 + k % 3));
        const BosonicState rho = random_state(s, ++seed, k % 4 == 0);
        const RealOperator m = random_nonneg_psd(base, 1000 + seed, k % 2 ? 1.0 : 0.7);
        const DirectRoundResult d = direct_round(rho, m);
        ASSERT_TRUE(d.bound_holds) << k;
        ASSERT_LE(potential(rho, m, 0.1), 1.0 + 1e-9);
    }
}

TEST(Rounding, EntropyDropProperty) {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const SpacePtr s = make_space(seed % 2 ? RegisterLayout{2, 3} : RegisterLayout{2, 2, 2},
                                      seed % 2 ? std::vector<std::size_t>{3} : std::vector<std::size_t>{2, 3});
        const BosonicState rho = random_state(s, seed, seed % 5 == 0);
        const JointDistribution p = measured_distribution(rho);
        for (std::size_t b = 0; b < s->blocks(); ++b) {
            const double gap = hellinger_to_split(p, b);
            double havg = 0.0;
            for (const auto& o : condition_step(rho, b)) havg += o.weight * tested_entropy(o.residual);
            ASSERT_GE(entropy(p) - havg, 2.0 * gap * gap - 1e-9) << seed;
        }
    }
}

TEST(Rounding, AdaptiveRoundOnExtensionEigenvectors) {
    std::size_t stepped = 0;
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const RealOperator m = seed % 3 == 0 ? maximally_entangled_projector(2 + seed % 2)
                                             : random_nonneg_psd(seed % 2 ? RegisterLayout{2, 3} : RegisterLayout{2, 2, 2}, seed);
        for (std::size_t r = 3; r <= 5; ++r) {
            const SpacePtr s = make_space(m.layout, std::vector<std::size_t>(m.layout.size() - 1, r));
            const EigenPair top = top_eigenpair(extension_operator_compressed(m, r).matrix);
            const BosonicState rho = BosonicState::pure(s, top.vector.normalized());
            EXPECT_NEAR(tested_value(rho, m), top.value, 1e-9);
            const AdaptiveRoundResult res = adaptive_round(rho, m, RoundingSchedule::from_epsilon(0.3, m.layout));
            EXPECT_TRUE(res.trace.all_steps_hold());
            EXPECT_TRUE(res.bound_holds);
            EXPECT_TRUE(res.witness.matches(m.layout));
            for (std::size_t k = 1; k < res.trace.steps.size(); ++k)
                EXPECT_GE(res.trace.steps[k].potential, res.trace.steps[k - 1].potential - 1e-9);
            stepped += res.trace.steps.size();
        }
    }
    EXPECT_GT(stepped, 0u);
}
