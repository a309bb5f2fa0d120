#include "stoqext/circuit.hpp"

#include <stdexcept>
#include <string>

namespace stoqext {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

void require_distinct(std::initializer_list<std::size_t> bits, std::size_t n) {
    std::vector<bool> seen(n, false);
    for (std::size_t b : bits) {
        if (b >= n) throw std::invalid_argument("gate bit " + std::to_string(b) + " out of range");
        if (seen[b]) throw std::invalid_argument("gate bits must be distinct");
        seen[b] = true;
    }
}

void mark_touched(const ReversibleCircuit& c, std::vector<bool>& out) {
    for (const Gate& g : c.gates())
        std::visit(overloaded{
                       [&](const gate::Not& x) { out[x.target] = true; },
                       [&](const gate::Cnot& x) { out[x.target] = true; },
                       [&](const gate::Toffoli& x) { out[x.target] = true; },
                       [&](const gate::Swap& x) { out[x.a] = out[x.b] = true; },
                       [&](const gate::WirePermutation& x) {
                           for (std::size_t i = 0; i < x.bits.size(); ++i)
                               if (x.perm(i) != i) out[x.bits[i]] = true;
                       },
                       [&](const gate::ControlledSubcircuit& x) { mark_touched(*x.body, out); },
                   },
                   g);
}

}  // namespace

ReversibleCircuit& ReversibleCircuit::add(Gate g) {
    const std::size_t n = num_bits_;
    std::visit(overloaded{
                   [&](const gate::Not& x) { require_distinct({x.target}, n); },
                   [&](const gate::Cnot& x) { require_distinct({x.control, x.target}, n); },
                   [&](const gate::Toffoli& x) { require_distinct({x.control1, x.control2, x.target}, n); },
                   [&](const gate::Swap& x) { require_distinct({x.a, x.b}, n); },
                   [&](const gate::WirePermutation& x) {
                       if (x.perm.size() != x.bits.size())
                           throw std::invalid_argument("WirePermutation: permutation size != block size");
                       std::vector<bool> seen(n, false);
                       for (std::size_t b : x.bits) {
                           if (b >= n || seen[b])
                               throw std::invalid_argument("WirePermutation: invalid or repeated bit");
                           seen[b] = true;
                       }
                   },
                   [&](const gate::ControlledSubcircuit& x) {
                       if (!x.body) throw std::invalid_argument("ControlledSubcircuit: empty body");
                       if (x.body->num_bits() != n)
                           throw std::invalid_argument("ControlledSubcircuit: body register size mismatch");
                       require_distinct({x.control}, n);
                       if (x.body->touched_bits()[x.control])
                           throw std::invalid_argument("ControlledSubcircuit: body writes its control bit");
                   },
               },
               g);
    gates_.push_back(std::move(g));
    return *this;
}

ReversibleCircuit& ReversibleCircuit::append(const ReversibleCircuit& other) {
    if (other.num_bits_ != num_bits_) throw std::invalid_argument("append: register size mismatch");
    for (const Gate& g : other.gates_) gates_.push_back(g);
    return *this;
}

BasisState ReversibleCircuit::apply(BasisState s) const {
    const std::size_t n = num_bits_;
    auto bit = [&](std::size_t k) { return (s & bit_mask(n, k)) != 0; };
    for (const Gate& g : gates_) {
        std::visit(overloaded{
                       [&](const gate::Not& x) { s ^= bit_mask(n, x.target); },
                       [&](const gate::Cnot& x) {
                           if (bit(x.control)) s ^= bit_mask(n, x.target);
                       },
                       [&](const gate::Toffoli& x) {
                           if (bit(x.control1) && bit(x.control2)) s ^= bit_mask(n, x.target);
                       },
                       [&](const gate::Swap& x) {
                           if (bit(x.a) != bit(x.b)) s ^= bit_mask(n, x.a) | bit_mask(n, x.b);
                       },
                       [&](const gate::WirePermutation& x) {
                           BasisState cleared = s;
                           BasisState moved = 0;
                           for (std::size_t i = 0; i < x.bits.size(); ++i) {
                               cleared &= ~bit_mask(n, x.bits[i]);
                               if (bit(x.bits[i])) moved |= bit_mask(n, x.bits[x.perm(i)]);
                           }
                           s = cleared | moved;
                       },
                       [&](const gate::ControlledSubcircuit& x) {
                           if (bit(x.control)) s = x.body->apply(s);
                       },
                   },
                   g);
    }
    return s;
}

std::vector<bool> ReversibleCircuit::touched_bits() const {
    std::vector<bool> out(num_bits_, false);
    mark_touched(*this, out);
    return out;
}

ReversibleCircuit ReversibleCircuit::relabel(const std::vector<std::size_t>& mapping,
                                             std::size_t new_num_bits) const {
    if (mapping.size() != num_bits_) throw std::invalid_argument("relabel: mapping size mismatch");
    auto m = [&](std::size_t b) { return mapping[b]; };
    ReversibleCircuit out(new_num_bits);
    for (const Gate& g : gates_) {
        std::visit(overloaded{
                       [&](const gate::Not& x) { out.add(gate::Not{m(x.target)}); },
                       [&](const gate::Cnot& x) { out.add(gate::Cnot{m(x.control), m(x.target)}); },
                       [&](const gate::Toffoli& x) {
                           out.add(gate::Toffoli{m(x.control1), m(x.control2), m(x.target)});
                       },
                       [&](const gate::Swap& x) { out.add(gate::Swap{m(x.a), m(x.b)}); },
                       [&](const gate::WirePermutation& x) {
                           std::vector<std::size_t> bits;
                           for (std::size_t b : x.bits) bits.push_back(m(b));
                           out.add(gate::WirePermutation{std::move(bits), x.perm});
                       },
                       [&](const gate::ControlledSubcircuit& x) {
                           out.add(gate::ControlledSubcircuit{
                               m(x.control),
                               std::make_shared<const ReversibleCircuit>(x.body->relabel(mapping, new_num_bits))});
                       },
                   },
                   g);
    }
    return out;
}

std::size_t ReversibleCircuit::gate_count() const {
    std::size_t count = 0;
    for (const Gate& g : gates_) {
        if (const auto* c = std::get_if<gate::ControlledSubcircuit>(&g))
            count += 1 + c->body->gate_count();
        else
            ++count;
    }
    return count;
}

BasisMap circuit_permutation(const ReversibleCircuit& c, const SimulationLimits& limits) {
    if (c.num_bits() > limits.max_bits)
        throw std::length_error("circuit_permutation: " + std::to_string(c.num_bits()) +
                                " bits exceeds simulation cap " + std::to_string(limits.max_bits));
    BasisMap map;
    map.num_bits = c.num_bits();
    const BasisState n = BasisState{1} << c.num_bits();
    map.image.resize(n);
    for (BasisState s = 0; s < n; ++s) map.image[s] = c.apply(s);
    return map;
}

RealOperator permutation_operator(const BasisMap& map) {
    const auto n = static_cast<Eigen::Index>(map.image.size());
    MatrixXd p = MatrixXd::Zero(n, n);
    for (Eigen::Index s = 0; s < n; ++s) p(static_cast<Eigen::Index>(map.image[s]), s) = 1.0;
    return RealOperator(RegisterLayout(std::vector<std::size_t>(map.num_bits, 2)), std::move(p));
}

ReversibleCircuit controlled_on_value(const std::vector<std::size_t>& control_bits, std::uint64_t value,
                                      const ReversibleCircuit& body) {
    const std::size_t n = body.num_bits();
    const std::size_t q = control_bits.size();
    ReversibleCircuit flips(n);
    for (std::size_t k = 0; k < q; ++k)
        if (((value >> (q - 1 - k)) & 1U) == 0) flips.add(gate::Not{control_bits[k]});

    auto inner = std::make_shared<const ReversibleCircuit>(body);
    for (std::size_t k = q; k-- > 0;) {
        ReversibleCircuit wrap(n);
        wrap.add(gate::ControlledSubcircuit{control_bits[k], inner});
        inner = std::make_shared<const ReversibleCircuit>(std::move(wrap));
    }
    ReversibleCircuit out(n);
    out.append(flips);
    out.append(*inner);
    out.append(flips);
    return out;
}

}  // namespace stoqext
