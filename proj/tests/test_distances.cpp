#include <gtest/gtest.h>

#include <cmath>
#include <map>

#include "stoqext/distances.hpp"
#include "test_util.hpp"

using namespace stoqext;
using namespace testutil;

namespace {

JointDistribution dist(std::vector<std::size_t> dims, std::vector<double> p) {
    return JointDistribution(RegisterLayout(std::move(dims)),
                             Eigen::Map<VectorXd>(p.data(), static_cast<Eigen::Index>(p.size())));
}

JointDistribution random_dist(const std::vector<std::size_t>& dims, std::uint64_t seed, double zeros = 0.0) {
    return JointDistribution(RegisterLayout(dims), random_probs(static_cast<Eigen::Index>(product(dims)), seed, zeros));
}

}  // namespace

TEST(Distances, HandValues) {
    EXPECT_NEAR(kl(dist({2}, {1, 0}), dist({2}, {0.5, 0.5})), std::log(2.0), 1e-12);
    const JointDistribution p = dist({2, 2}, {0.5, 0, 0, 0.5});
    const double h = hellinger(p, product_of_marginals(p));
    EXPECT_NEAR(h * h, 1.0 - 1.0 / std::sqrt(2.0), 1e-12);
    EXPECT_NEAR(mutual_information(p, {0}, {1}), std::log(2.0), 1e-12);
    EXPECT_NEAR(entropy(p), std::log(2.0), 1e-12);
}

TEST(Distances, KlIsInfiniteOffSupport) {
    EXPECT_TRUE(std::isinf(kl(dist({2}, {0.5, 0.5}), dist({2}, {1, 0}))));
}

TEST(Distances, RejectsInvalidDistributions) {
    EXPECT_THROW(dist({2}, {0.7, 0.7}), std::invalid_argument);
    EXPECT_THROW(dist({2}, {1.1, -0.1}), std::invalid_argument);
    EXPECT_THROW(dist({3}, {0.5, 0.5}), std::invalid_argument);
}

TEST(Distances, MarginalMatchesLoopOracle) {
    const std::vector<std::size_t> dims{2, 3, 2};
    const JointDistribution p = random_dist(dims, 5);
    const JointDistribution m = marginal(p, {2, 0});
    EXPECT_EQ(m.layout(), (RegisterLayout{2, 2}));
    MatrixXd expect = MatrixXd::Zero(2, 2);
    for (std::size_t x = 0; x < 12; ++x) {
        const auto d = digits_of(x, dims);
        expect(static_cast<int>(d[2]), static_cast<int>(d[0])) += p[x];
    }
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) EXPECT_NEAR(m[static_cast<std::size_t>(a * 2 + b)], expect(a, b), 1e-15);
}

TEST(Distances, HellingerToSplitMatchesOracle) {
    const std::vector<std::size_t> dims{2, 3, 2};
    const JointDistribution p = random_dist(dims, 9);
    for (std::size_t c = 0; c < 3; ++c) {
        std::vector<double> pi(dims[c], 0.0);
        std::map<std::vector<std::size_t>, double> rest;
        for (std::size_t x = 0; x < 12; ++x) {
            auto d = digits_of(x, dims);
            pi[d[c]] += p[x];
            d[c] = 0;
            rest[d] += p[x];
        }
        double aff = 0.0;
        for (std::size_t x = 0; x < 12; ++x) {
            auto d = digits_of(x, dims);
            const double a = pi[d[c]];
            d[c] = 0;
            aff += std::sqrt(p[x] * a * rest[d]);
        }
        EXPECT_NEAR(hellinger_to_split(p, c), std::sqrt(std::max(0.0, 1.0 - aff)), 1e-12);
    }
}

TEST(Distances, MutualInformationIsKlToProduct) {
    const JointDistribution p = random_dist({3, 2}, 13);
    EXPECT_NEAR(mutual_information(p, {0}, {1}), kl(p, product_of_marginals(p)), 1e-12);
    const JointDistribution q = product(random_dist({3}, 1), random_dist({2}, 2));
    EXPECT_NEAR(mutual_information(q, {0}, {1}), 0.0, 1e-12);
    EXPECT_THROW(mutual_information(p, {0}, {0}), std::invalid_argument);
}

TEST(Distances, KlDominatesHellingerProperty) {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const std::size_t n = 2 + s % 5;
        const JointDistribution p = random_dist({n}, 2 * s, s % 3 == 0 ? 0.3 : 0.0);
        const JointDistribution q = random_dist({n}, 2 * s + 1);
        const HellingerKlReport r = check_hellinger_kl(p, q);
        ASSERT_TRUE(r.holds) << s;
        ASSERT_GE(r.kl, 2.0 * r.hellinger * r.hellinger - 1e-12);
    }
}

TEST(Distances, TensorizationProperty) {
    for (std::uint64_t s = 0; s < 1000; ++s) {
        const std::size_t m = 2 + s % 3;
        std::vector<std::size_t> dims(m, 2);
        if (s % 2) dims[0] = 3;
        const JointDistribution p = random_dist(dims, 100 + s, 0.2);
        double delta = 0.0;
        for (std::size_t i = 0; i + 1 < m; ++i) delta = std::max(delta, hellinger_to_split(p, i));
        const TensorizationReport r = check_tensorization(p, delta);
        ASSERT_TRUE(r.hypothesis);
        ASSERT_TRUE(r.holds) << s;
        ASSERT_LE(r.global, static_cast<double>(m - 1) * delta + 1e-12);
    }
}

TEST(Distances, HellingerIsBounded) {
    const JointDistribution a = JointDistribution::point_mass(RegisterLayout{3}, 0);
    const JointDistribution b = JointDistribution::point_mass(RegisterLayout{3}, 2);
    EXPECT_NEAR(hellinger(a, b), 1.0, 1e-15);
    EXPECT_NEAR(hellinger(a, a), 0.0, 1e-15);
}
