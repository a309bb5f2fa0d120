#pragma once

// Classical reversible circuits over bit registers.
//
// Bit k of an n-bit register is the (n-1-k)-th binary digit of the basis
// index, so bit 0 is the most significant (leftmost tensor factor).

#include <cstddef>
#include <cstdint>
#include <memory>
#include <variant>
#include <vector>

#include "stoqext/permutation.hpp"
#include "stoqext/tensor.hpp"

namespace stoqext {

class ReversibleCircuit;

namespace gate {
struct Not {
    std::size_t target;
};
struct Cnot {
    std::size_t control, target;
};
struct Toffoli {
    std::size_t control1, control2, target;
};
struct Swap {
    std::size_t a, b;
};
/// The value on bits[i] moves to bits[perm(i)].
struct WirePermutation {
    std::vector<std::size_t> bits;
    Permutation perm;
};
/// Applies `body` (a circuit on the same register) when `control` is 1.
/// The body must not touch the control bit.
struct ControlledSubcircuit {
    std::size_t control;
    std::shared_ptr<const ReversibleCircuit> body;
};
}  // namespace gate

using Gate = std::variant<gate::Not, gate::Cnot, gate::Toffoli, gate::Swap, gate::WirePermutation,
                          gate::ControlledSubcircuit>;

using BasisState = std::uint64_t;

class ReversibleCircuit {
public:
    explicit ReversibleCircuit(std::size_t num_bits = 0) : num_bits_(num_bits) {}

    std::size_t num_bits() const { return num_bits_; }
    const std::vector<Gate>& gates() const { return gates_; }

    /// Validates bit indices (in range, distinct within the gate) and appends.
    ReversibleCircuit& add(Gate g);
    ReversibleCircuit& append(const ReversibleCircuit& other);

    BasisState apply(BasisState state) const;

    /// Bits written by any gate, recursively.
    std::vector<bool> touched_bits() const;

    /// Copy of this circuit on a `new_num_bits` register with bit k renamed to
    /// mapping[k].
    ReversibleCircuit relabel(const std::vector<std::size_t>& mapping, std::size_t new_num_bits) const;

    std::size_t gate_count() const;

private:
    std::size_t num_bits_;
    std::vector<Gate> gates_;
};

inline BasisState bit_mask(std::size_t num_bits, std::size_t bit) {
    return BasisState{1} << (num_bits - 1 - bit);
}

/// Basis-index map of a circuit: image[s] = C(s).
struct BasisMap {
    std::size_t num_bits = 0;
    std::vector<BasisState> image;
};

struct SimulationLimits {
    std::size_t max_bits = 20;
};

/// Permutation of the 2^n basis states; throws if n exceeds the cap.
BasisMap circuit_permutation(const ReversibleCircuit& c, const SimulationLimits& limits = {});
/// Dense permutation matrix (column s has its 1 in row image[s]).
RealOperator permutation_operator(const BasisMap& map);

/// The circuit applying `body` iff the register `control_bits` holds `value`
/// (bit control_bits[0] most significant). Realized with NOT conjugation and
/// nested single-control subcircuits.
ReversibleCircuit controlled_on_value(const std::vector<std::size_t>& control_bits, std::uint64_t value,
                                      const ReversibleCircuit& body);

}  // namespace stoqext
