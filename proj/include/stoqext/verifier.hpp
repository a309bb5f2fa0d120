#pragma once

// Branch-overlap verifiers: a reversible circuit on witness bits followed by
// `zeros` ancillas in |0> and `pluses` ancillas in |+>.

#include <string>
#include <vector>

#include "stoqext/circuit.hpp"

namespace stoqext {

struct AncillaSpec {
    std::size_t zeros = 0;
    std::size_t pluses = 0;
};

class BranchOverlapVerifier {
public:
    BranchOverlapVerifier() = default;
    /// `register_bits[i]` is the bit width of witness register A_i.
    BranchOverlapVerifier(std::vector<std::size_t> register_bits, AncillaSpec ancilla,
                          ReversibleCircuit circuit);

    const std::vector<std::size_t>& register_bits() const { return register_bits_; }
    const AncillaSpec& ancilla() const { return ancilla_; }
    const ReversibleCircuit& circuit() const { return circuit_; }

    std::size_t witness_bits() const;
    std::size_t total_bits() const { return circuit_.num_bits(); }
    /// Register dims 2^{bits_i}.
    RegisterLayout witness_layout() const;

private:
    std::vector<std::size_t> register_bits_;
    AncillaSpec ancilla_;
    ReversibleCircuit circuit_;
};

/// G = (I ⊗ <eta|) C (I ⊗ |eta>).
RealOperator raw_overlap(const BranchOverlapVerifier& v, const SimulationLimits& limits = {});
/// H = (G + G^T) / 2.
RealOperator hermitian_overlap(const BranchOverlapVerifier& v, const SimulationLimits& limits = {});
/// M = (I + H) / 2.
RealOperator acceptance_matrix(const BranchOverlapVerifier& v, const SimulationLimits& limits = {});

/// (1 + <psi, H psi>) / 2 for a unit witness vector.
double acceptance_probability(const BranchOverlapVerifier& v, const VectorXd& psi,
                              const SimulationLimits& limits = {});

/// Runs the Hadamard-test form: an output qubit in |+> controls C, then the
/// X expectation on that qubit is measured. Returns (1 + <X>) / 2.
double simulate_standard_model(const BranchOverlapVerifier& v, const VectorXd& psi,
                               const SimulationLimits& limits = {});

/// Adds one |+> branch bit selecting between the identity and the original
/// circuit, so the new Hermitian overlap equals the old acceptance matrix.
BranchOverlapVerifier acceptance_as_overlap(const BranchOverlapVerifier& v,
                                            const SimulationLimits& limits = {});

}  // namespace stoqext
