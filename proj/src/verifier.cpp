#include "stoqext/verifier.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

namespace stoqext {

BranchOverlapVerifier::BranchOverlapVerifier(std::vector<std::size_t> register_bits, AncillaSpec ancilla,
                                             ReversibleCircuit circuit)
    : register_bits_(std::move(register_bits)), ancilla_(ancilla), circuit_(std::move(circuit)) {
    for (std::size_t b : register_bits_)
        if (b == 0) throw std::invalid_argument("BranchOverlapVerifier: empty witness register");
    if (circuit_.num_bits() != witness_bits() + ancilla_.zeros + ancilla_.pluses)
        throw std::invalid_argument("BranchOverlapVerifier: circuit width != witness + ancilla bits");
}

std::size_t BranchOverlapVerifier::witness_bits() const {
    return std::accumulate(register_bits_.begin(), register_bits_.end(), std::size_t{0});
}

RegisterLayout BranchOverlapVerifier::witness_layout() const {
    std::vector<std::size_t> dims;
    for (std::size_t b : register_bits_) dims.push_back(std::size_t{1} << b);
    return RegisterLayout(std::move(dims));
}

namespace {

void require_cap(std::size_t bits, const SimulationLimits& limits, const char* who) {
    if (bits > limits.max_bits)
        throw std::length_error(std::string(who) + ": " + std::to_string(bits) +
                                " bits exceeds simulation cap " + std::to_string(limits.max_bits));
}

}  // namespace

RealOperator raw_overlap(const BranchOverlapVerifier& v, const SimulationLimits& limits) {
    require_cap(v.total_bits(), limits, "raw_overlap");
    const std::size_t w = v.witness_bits();
    const std::size_t z = v.ancilla().zeros;
    const std::size_t r = v.ancilla().pluses;
    const BasisState wdim = BasisState{1} << w;
    const BasisState rdim = BasisState{1} << r;
    const BasisState zr_mask = ((BasisState{1} << z) - 1) << r;
    const double weight = 1.0 / static_cast<double>(rdim);

    MatrixXd g = MatrixXd::Zero(static_cast<Eigen::Index>(wdim), static_cast<Eigen::Index>(wdim));
    for (BasisState x = 0; x < wdim; ++x)
        for (BasisState a = 0; a < rdim; ++a) {
            const BasisState out = v.circuit().apply((x << (z + r)) | a);
            if ((out & zr_mask) != 0) continue;
            g(static_cast<Eigen::Index>(out >> (z + r)), static_cast<Eigen::Index>(x)) += weight;
        }
    return RealOperator(v.witness_layout(), std::move(g));
}

RealOperator hermitian_overlap(const BranchOverlapVerifier& v, const SimulationLimits& limits) {
    RealOperator g = raw_overlap(v, limits);
    MatrixXd h = (g.matrix + g.matrix.transpose()) / 2.0;
    return RealOperator(g.layout, std::move(h));
}

RealOperator acceptance_matrix(const BranchOverlapVerifier& v, const SimulationLimits& limits) {
    RealOperator h = hermitian_overlap(v, limits);
    MatrixXd m = (MatrixXd::Identity(h.dim(), h.dim()) + h.matrix) / 2.0;
    return RealOperator(h.layout, std::move(m));
}

static void require_unit(const BranchOverlapVerifier& v, const VectorXd& psi, const char* who) {
    if (static_cast<std::size_t>(psi.size()) != (std::size_t{1} << v.witness_bits()))
        throw std::invalid_argument(std::string(who) + ": witness dimension mismatch");
    if (std::abs(psi.norm() - 1.0) > 1e-10)
        throw std::invalid_argument(std::string(who) + ": witness is not normalized");
}

double acceptance_probability(const BranchOverlapVerifier& v, const VectorXd& psi,
                              const SimulationLimits& limits) {
    require_unit(v, psi, "acceptance_probability");
    const RealOperator h = hermitian_overlap(v, limits);
    return 0.5 * (1.0 + psi.dot(h.matrix * psi));
}

double simulate_standard_model(const BranchOverlapVerifier& v, const VectorXd& psi,
                               const SimulationLimits& limits) {
    require_unit(v, psi, "simulate_standard_model");
    require_cap(v.total_bits(), limits, "simulate_standard_model");
    const std::size_t n = v.total_bits();
    const std::size_t z = v.ancilla().zeros;
    const std::size_t r = v.ancilla().pluses;

    // Register (O, W, ancillas); U = |0><0| ⊗ I + |1><1| ⊗ C.
    std::vector<std::size_t> shift(n);
    for (std::size_t k = 0; k < n; ++k) shift[k] = k + 1;
    ReversibleCircuit u(n + 1);
    u.add(gate::ControlledSubcircuit{0, std::make_shared<const ReversibleCircuit>(v.circuit().relabel(shift, n + 1))});

    const BasisState dim = BasisState{1} << (n + 1);
    const BasisState obit = bit_mask(n + 1, 0);
    std::vector<double> state(dim, 0.0);
    const double amp_plus = 1.0 / std::sqrt(2.0);
    const double amp_eta = 1.0 / std::sqrt(static_cast<double>(BasisState{1} << r));
    for (BasisState o = 0; o < 2; ++o)
        for (Eigen::Index x = 0; x < psi.size(); ++x) {
            if (psi(x) == 0.0) continue;
            for (BasisState a = 0; a < (BasisState{1} << r); ++a) {
                const BasisState s = (o << n) | (static_cast<BasisState>(x) << (z + r)) | a;
                state[u.apply(s)] += amp_plus * psi(x) * amp_eta;
            }
        }
    double x_expectation = 0.0;
    for (BasisState s = 0; s < dim; ++s)
        if (state[s] != 0.0) x_expectation += state[s] * state[s ^ obit];
    return 0.5 * (1.0 + x_expectation);
}

BranchOverlapVerifier acceptance_as_overlap(const BranchOverlapVerifier& v, const SimulationLimits& limits) {
    require_cap(v.total_bits() + 1, limits, "acceptance_as_overlap");
    const std::size_t n = v.total_bits();
    std::vector<std::size_t> same(n);
    std::iota(same.begin(), same.end(), std::size_t{0});
    ReversibleCircuit c(n + 1);
    c.add(gate::ControlledSubcircuit{n, std::make_shared<const ReversibleCircuit>(v.circuit().relabel(same, n + 1))});
    AncillaSpec anc = v.ancilla();
    anc.pluses += 1;
    return BranchOverlapVerifier(v.register_bits(), anc, std::move(c));
}

}  // namespace stoqext
