#include <gtest/gtest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "stoqext/verifier.hpp"
#include "test_util.hpp"

using namespace stoqext;
using namespace testutil;

namespace {

ReversibleCircuit random_circuit(std::size_t n, std::size_t gates, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> bits(n);
    std::iota(bits.begin(), bits.end(), std::size_t{0});
    ReversibleCircuit c(n);
    for (std::size_t g = 0; g < gates; ++g) {
        std::shuffle(bits.begin(), bits.end(), rng);
        switch (rng() % 4) {
            case 0: c.add(gate::Not{bits[0]}); break;
            case 1: c.add(gate::Cnot{bits[0], bits[1]}); break;
            case 2: c.add(gate::Swap{bits[0], bits[1]}); break;
            default:
                if (n >= 3) c.add(gate::Toffoli{bits[0], bits[1], bits[2]});
        }
    }
    return c;
}

bool bit(BasisState s, std::size_t n, std::size_t k) { return (s & bit_mask(n, k)) != 0; }

/// (I ⊗ <0^z +^r|) P (I ⊗ |0^z +^r>) from the dense permutation matrix.
MatrixXd overlap_oracle(const BranchOverlapVerifier& v) {
    const std::size_t z = v.ancilla().zeros, r = v.ancilla().pluses;
    const auto w = static_cast<Eigen::Index>(std::size_t{1} << v.witness_bits());
    const auto a = static_cast<Eigen::Index>(std::size_t{1} << (z + r));
    VectorXd eta = VectorXd::Zero(a);
    eta.head(static_cast<Eigen::Index>(std::size_t{1} << r)).setConstant(std::pow(2.0, -0.5 * double(r)));
    MatrixXd iso = MatrixXd::Zero(w * a, w);
    for (Eigen::Index x = 0; x < w; ++x) iso.block(x * a, x, a, 1) = eta;
    const MatrixXd p = permutation_operator(circuit_permutation(v.circuit())).matrix;
    return iso.transpose() * p * iso;
}

}  // namespace

TEST(Circuit, GateTruthTables) {
    const std::size_t n = 3;
    ReversibleCircuit x(n);
    x.add(gate::Not{0});
    EXPECT_EQ(x.apply(0b000), 0b100u);

    ReversibleCircuit cx(n);
    cx.add(gate::Cnot{0, 2});
    ReversibleCircuit ccx(n);
    ccx.add(gate::Toffoli{0, 1, 2});
    ReversibleCircuit sw(n);
    sw.add(gate::Swap{0, 2});
    ReversibleCircuit wp(n);
    wp.add(gate::WirePermutation{{0, 1, 2}, Permutation{1, 2, 0}});
    for (BasisState s = 0; s < 8; ++s) {
        const bool b0 = bit(s, n, 0), b1 = bit(s, n, 1), b2 = bit(s, n, 2);
        EXPECT_EQ(bit(cx.apply(s), n, 2), b2 != b0);
        EXPECT_EQ(bit(ccx.apply(s), n, 2), b2 != (b0 && b1));
        EXPECT_EQ(bit(sw.apply(s), n, 0), b2);
        EXPECT_EQ(bit(sw.apply(s), n, 2), b0);
        // value on bit i moves to bit perm(i)
        const BasisState t = wp.apply(s);
        EXPECT_EQ(bit(t, n, 1), b0);
        EXPECT_EQ(bit(t, n, 2), b1);
        EXPECT_EQ(bit(t, n, 0), b2);
    }
}

TEST(Circuit, ValidatesGates) {
    ReversibleCircuit c(3);
    EXPECT_THROW(c.add(gate::Cnot{1, 1}), std::invalid_argument);
    EXPECT_THROW(c.add(gate::Not{3}), std::invalid_argument);
    auto body = std::make_shared<ReversibleCircuit>(3);
    body->add(gate::Not{0});
    EXPECT_THROW(c.add(gate::ControlledSubcircuit{0, body}), std::invalid_argument);
    EXPECT_NO_THROW(c.add(gate::ControlledSubcircuit{1, body}));
}

TEST(Circuit, ControlledOnValueMatchesOracle) {
    const std::size_t n = 5;
    ReversibleCircuit body(n);
    body.add(gate::Swap{3, 4});
    body.add(gate::Not{3});
    for (std::uint64_t value = 0; value < 8; ++value) {
        const ReversibleCircuit c = controlled_on_value({0, 1, 2}, value, body);
        for (BasisState s = 0; s < 32; ++s) {
            const std::uint64_t ctl = s >> 2;
            EXPECT_EQ(c.apply(s), ctl == value ? body.apply(s) : s);
        }
    }
}

TEST(Circuit, RelabelMovesBits) {
    ReversibleCircuit c(2);
    c.add(gate::Cnot{0, 1});
    const ReversibleCircuit r = c.relabel({3, 1}, 4);
    for (BasisState s = 0; s < 16; ++s) EXPECT_EQ(bit(r.apply(s), 4, 1), bit(s, 4, 1) != bit(s, 4, 3));
}

TEST(Circuit, PermutationCap) {
    EXPECT_THROW(circuit_permutation(ReversibleCircuit(21)), std::length_error);
}

TEST(Verifier, HandOverlaps) {
    // Identity circuit: G = H = M = I.
    const BranchOverlapVerifier id({1}, AncillaSpec{1, 1}, ReversibleCircuit(3));
    EXPECT_TRUE(raw_overlap(id).matrix.isApprox(MatrixXd::Identity(2, 2)));
    // Flipping a zero ancilla kills every branch.
    ReversibleCircuit flip(3);
    flip.add(gate::Not{1});
    EXPECT_TRUE(raw_overlap(BranchOverlapVerifier({1}, AncillaSpec{1, 1}, flip)).matrix.isZero());
    // Plus bit controlling NOT on the witness: G = (I + X)/2.
    ReversibleCircuit cx(2);
    cx.add(gate::Cnot{1, 0});
    MatrixXd expect(2, 2);
    expect << 0.5, 0.5, 0.5, 0.5;
    EXPECT_TRUE(raw_overlap(BranchOverlapVerifier({1}, AncillaSpec{0, 1}, cx)).matrix.isApprox(expect));
}

TEST(Verifier, RawOverlapMatchesDenseOracle) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const std::vector<std::size_t> regs = s % 2 ? std::vector<std::size_t>{1, 2} : std::vector<std::size_t>{1, 1, 1};
        const std::size_t z = s % 3, r = 1 + s % 2;
        const BranchOverlapVerifier v(regs, AncillaSpec{z, r}, random_circuit(3 + z + r, 10, s));
        EXPECT_LE((raw_overlap(v).matrix - overlap_oracle(v)).cwiseAbs().maxCoeff(), 1e-12) << s;
    }
}

TEST(Verifier, BasicPropertiesAndStandardModel) {
    for (std::uint64_t s = 0; s < 60; ++s) {
        const BranchOverlapVerifier v({1, 2}, AncillaSpec{1, 2}, random_circuit(6, 12, 1000 + s));
        const RealOperator g = raw_overlap(v), h = hermitian_overlap(v), m = acceptance_matrix(v);
        EXPECT_TRUE(is_entrywise_nonneg(g));
        EXPECT_TRUE(is_entrywise_nonneg(h));
        EXPECT_TRUE(is_symmetric(h.matrix, 0.0));
        EXPECT_LE(spectral_norm(h.matrix), 1.0 + 1e-9);
        EXPECT_TRUE(psd_interval_check(m.matrix));
        EXPECT_EQ(m.layout, (RegisterLayout{2, 4}));
        const VectorXd psi = random_unit(8, s);
        EXPECT_NEAR(simulate_standard_model(v, psi), acceptance_probability(v, psi), 1e-9);
        EXPECT_NEAR(acceptance_probability(v, psi), psi.dot(m.matrix * psi), 1e-12);
    }
}

TEST(Verifier, AcceptanceAsOverlapIsExact) {
    for (std::uint64_t s = 0; s < 40; ++s) {
        const BranchOverlapVerifier v({2, 1}, AncillaSpec{s % 2, 1}, random_circuit(4 + s % 2, 9, 77 + s));
        const BranchOverlapVerifier w = acceptance_as_overlap(v);
        EXPECT_EQ(w.ancilla().pluses, v.ancilla().pluses + 1);
        EXPECT_LE((hermitian_overlap(w).matrix - acceptance_matrix(v).matrix).cwiseAbs().maxCoeff(), 1e-12);
    }
}

TEST(Verifier, RejectsBadWitness) {
    const BranchOverlapVerifier v({1}, AncillaSpec{0, 1}, ReversibleCircuit(2));
    EXPECT_THROW(acceptance_probability(v, VectorXd::Ones(2)), std::invalid_argument);
    EXPECT_THROW(acceptance_probability(v, VectorXd::Ones(3).normalized()), std::invalid_argument);
    EXPECT_THROW(BranchOverlapVerifier({1}, AncillaSpec{1, 1}, ReversibleCircuit(2)), std::invalid_argument);
}
