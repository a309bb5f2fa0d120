#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "stoqext/io.hpp"
#include "stoqext/product_value.hpp"
#include "stoqext/spectrum.hpp"
#include "test_util.hpp"

using namespace stoqext;
using namespace testutil;

namespace {

/// Dense angle sweep over two qubit registers, independent of both the grid
/// and the alternating maximizer.
double two_qubit_sweep(const RealOperator& m, int steps) {
    double best = -1e300;
    for (int i = 0; i <= steps; ++i) {
        const double a = std::numbers::pi / 2 * i / steps;
        const VectorXd x = (VectorXd(2) << std::cos(a), std::sin(a)).finished();
        for (int j = 0; j <= steps; ++j) {
            const double b = std::numbers::pi / 2 * j / steps;
            const VectorXd y = (VectorXd(2) << std::cos(b), std::sin(b)).finished();
            const VectorXd v = tensor<double>(x, y);
            best = std::max(best, v.dot(m.matrix * v));
        }
    }
    return best;
}

}  // namespace

TEST(ProductValue, BasisWitness) {
    MatrixXd m = MatrixXd::Zero(4, 4);
    m(0, 0) = 1.0;
    const RealOperator op(RegisterLayout{2, 2}, m);
    const ProductWitness w({VectorXd::Unit(2, 0), VectorXd::Unit(2, 0)});
    EXPECT_DOUBLE_EQ(product_value(op, w), 1.0);
    EXPECT_NEAR(omega_plus_alternating(op).value, 1.0, 1e-12);
    EXPECT_THROW(ProductWitness({VectorXd::Ones(2)}), std::invalid_argument);
    EXPECT_THROW(ProductWitness({-VectorXd::Unit(2, 0)}), std::invalid_argument);
}

TEST(ProductValue, MaximallyEntangledFamily) {
    for (std::size_t d = 2; d <= 4; ++d) {
        const RealOperator m = maximally_entangled_projector(d);
        EXPECT_NEAR(lambda_max(m.matrix), 1.0, 1e-9);
        EXPECT_NEAR(omega_plus_alternating(m).value, 1.0 / double(d), 1e-6);
        if (d <= 3) EXPECT_NEAR(omega_plus_grid(m, 200), 1.0 / double(d), grid_tolerance(m, 200));
    }
    EXPECT_THROW(omega_plus_grid(maximally_entangled_projector(4), 10), std::domain_error);
}

TEST(ProductValue, AlternatingMatchesIndependentSweep) {
    for (std::uint64_t s = 0; s < 15; ++s) {
        const RealOperator m = random_nonneg_psd(RegisterLayout{2, 2}, s);
        const double sweep = two_qubit_sweep(m, 1500);
        const double alt = omega_plus_alternating(m).value;
        EXPECT_GE(alt, sweep - 1e-9) << s;
        EXPECT_NEAR(alt, sweep, 1e-5) << s;
    }
}

TEST(ProductValue, GridAgreesWithAlternating) {
    for (std::uint64_t s = 0; s < 12; ++s) {
        const RegisterLayout l = s % 3 == 0 ? RegisterLayout{3, 3} : (s % 3 == 1 ? RegisterLayout{2, 3} : RegisterLayout{2, 2, 2});
        const RealOperator m = random_nonneg_psd(l, 50 + s);
        const std::size_t g = l.size() == 3 ? 30 : 150;
        const double grid = omega_plus_grid(m, g);
        const double alt = omega_plus_alternating(m).value;
        EXPECT_NEAR(grid, alt, grid_tolerance(m, g)) << s;
        EXPECT_GE(alt, grid - 1e-9) << s;
    }
}

TEST(ProductValue, AlternatingHistoryIsMonotone) {
    AlternatingOptions opt;
    opt.record_history = true;
    opt.restarts = 10;
    const RealOperator m = random_nonneg_psd(RegisterLayout{3, 2, 2}, 8);
    const AlternatingResult r = omega_plus_alternating(m, opt);
    ASSERT_EQ(r.history.size(), 10u);
    for (const auto& h : r.history)
        for (std::size_t k = 1; k < h.size(); ++k) EXPECT_GE(h[k], h[k - 1] - 1e-12);
    EXPECT_NEAR(product_value(m, r.witness), r.value, 1e-12);
    EXPECT_TRUE(r.witness.matches(m.layout));
}

TEST(ProductValue, AlternatingIsDeterministic) {
    const RealOperator m = random_nonneg_psd(RegisterLayout{3, 3}, 2);
    EXPECT_EQ(omega_plus_alternating(m).value, omega_plus_alternating(m).value);
}

TEST(ProductValue, InducedMatrixMatchesContraction) {
    const RealOperator m = random_nonneg_psd(RegisterLayout{2, 3, 2}, 4);
    const std::vector<VectorXd> f{random_unit(2, 1, true), random_unit(3, 2, true), random_unit(2, 3, true)};
    const MatrixXd k = induced_matrix(m, f, 1);
    const std::vector<std::size_t> dims{2, 3, 2};
    for (int a = 0; a < 3; ++a)
        for (int b = 0; b < 3; ++b) {
            double acc = 0.0;
            for (std::size_t x = 0; x < 12; ++x)
                for (std::size_t y = 0; y < 12; ++y) {
                    const auto dx = digits_of(x, dims), dy = digits_of(y, dims);
                    if (dx[1] != std::size_t(a) || dy[1] != std::size_t(b)) continue;
                    acc += f[0](dx[0]) * f[2](dx[2]) * m.matrix(int(x), int(y)) * f[0](dy[0]) * f[2](dy[2]);
                }
            EXPECT_NEAR(k(a, b), acc, 1e-12);
        }
    // The induced value equals the product value at the same factors.
    EXPECT_NEAR(f[1].dot(k * f[1]), product_value(m, ProductWitness(f, 1e-9)), 1e-12);
}

TEST(ProductValue, PerronVectorIsNonnegativeTopEigenvector) {
    const MatrixXd k = random_nonneg_psd(RegisterLayout{4}, 3).matrix;
    const VectorXd v = perron_vector(k, VectorXd::Ones(4).normalized());
    EXPECT_GE(v.minCoeff(), 0.0);
    EXPECT_NEAR(v.dot(k * v), lambda_max(k), 1e-12);
    // Degenerate top eigenspace resolved toward the previous factor.
    const VectorXd prev = (VectorXd(2) << 0.6, 0.8).finished();
    EXPECT_TRUE(perron_vector(MatrixXd::Identity(2, 2), prev).isApprox(prev));
}

TEST(ProductValue, RejectsNegativeEntries) {
    MatrixXd m = MatrixXd::Identity(4, 4);
    m(0, 1) = m(1, 0) = -0.1;
    EXPECT_THROW(omega_plus_alternating(RealOperator(RegisterLayout{2, 2}, m)), std::invalid_argument);
}
