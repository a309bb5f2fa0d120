#include "stoqext/collapse.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "stoqext/extension.hpp"
#include "stoqext/product_value.hpp"

namespace stoqext {

CollapsePlan plan(std::size_t k, const std::vector<std::size_t>& dims, double c, double s, std::size_t r_actual,
                  std::optional<double> eta_actual) {
    if (k < 2) throw std::invalid_argument("plan: need k >= 2");
    if (dims.size() != k) throw std::invalid_argument("plan: need one dimension per prover");
    if (!(c > s)) throw std::invalid_argument("plan: need c > s");
    if (c > 1.0 || s < 0.0) throw std::invalid_argument("plan: need 0 <= s < c <= 1");
    if (r_actual < 1) throw std::invalid_argument("plan: R_actual must be >= 1");
    if (eta_actual && !(*eta_actual > 0.0 && *eta_actual < 1.0))
        throw std::invalid_argument("plan: eta override must be in (0,1)");
    CollapsePlan p;
    p.k = k;
    p.base_dims = dims;
    p.c = c;
    p.s = s;
    p.delta_gap = c - s;
    p.epsilon = p.delta_gap / 4.0;
    double logs = 0.0;
    for (std::size_t d : dims) {
        if (d == 0) throw std::invalid_argument("plan: dimensions must be >= 1");
        logs += std::log(static_cast<double>(d));
    }
    p.B = std::max(1.0, logs);
    const double km1 = static_cast<double>(k - 1);
    p.R_theoretical = 1.0 + std::ceil(128.0 * p.B * km1 * km1 / (p.epsilon * p.epsilon * p.epsilon));
    p.eta = p.delta_gap / (64.0 * km1);
    p.alpha = 2.0 * km1 * p.eta;
    p.c_prime = (1.0 + c - p.alpha) / 2.0;
    p.s_prime = (1.0 + s + p.epsilon + p.alpha) / 2.0;
    p.gap_prime = 11.0 * p.delta_gap / 32.0;
    p.R_actual = r_actual;
    p.eta_actual = eta_actual;
    return p;
}

CompiledExtensionVerifier compile_matrices(const RealOperator& m, const CollapsePlan& plan, std::size_t max_dim) {
    if (m.layout.size() != plan.k) throw std::invalid_argument("compile_matrices: operator has wrong register count");
    for (std::size_t i = 0; i < plan.k; ++i)
        if (m.layout.dim(i) != plan.base_dims[i])
            throw std::invalid_argument("compile_matrices: operator dims differ from the plan");
    const std::size_t r = plan.R_actual;
    const SeparatelySymmetricSpace space(m.layout, std::vector<std::size_t>(plan.k - 1, r));
    const RegisterLayout full = space.full_layout();
    if (full.total_dim() > max_dim)
        throw std::length_error("compile_matrices: extended dimension exceeds cap");

    const DyadicPermutationSampler sampler(r, plan.construction_eta());
    RealOperator pi(RegisterLayout(std::vector<std::size_t>{}), MatrixXd::Ones(1, 1));
    for (std::size_t i = 0; i + 1 < plan.k; ++i) pi = tensor(pi, approx_projector(sampler, m.layout.dim(i), max_dim));
    pi = tensor(pi, RealOperator::identity(RegisterLayout{m.layout.dim(plan.k - 1)}));

    const RealOperator embedded = embed_on_tested(m, full, space.tested_positions());
    MatrixXd e = pi.matrix * embedded.matrix * pi.matrix;
    e = (e + e.transpose()).eval() / 2.0;
    const auto n = static_cast<Eigen::Index>(full.total_dim());
    MatrixXd cm = (MatrixXd::Identity(n, n) + e) / 2.0;

    CompiledExtensionVerifier out{plan,
                                  pi,
                                  RealOperator(full, std::move(e)),
                                  RealOperator(full, std::move(cm)),
                                  extension_operator(m, r, ExtensionOptions{max_dim, {}}),
                                  0.0,
                                  false,
                                  std::nullopt};
    out.perturbation = spectral_norm(MatrixXd(out.tilde_E.matrix - out.exact_E.matrix));
    out.perturbation_holds = out.perturbation <= plan.construction_alpha() + 1e-9;
    return out;
}

namespace {

/// Controlled routing: for every branch value with a nonidentity permutation,
/// permute the copies of `block` when `branch_bits` hold that value.
void add_routing(ReversibleCircuit& c, const DyadicPermutationSampler& sampler,
                 const std::vector<std::size_t>& branch_bits, const std::vector<std::size_t>& block_start,
                 std::size_t copy_bits) {
    for (std::uint64_t t = 0; t < sampler.Q(); ++t) {
        const Permutation tau = sampler.pi_of(t);
        if (tau.is_identity()) continue;
        // Copy j of the block moves to copy tau(j), bit by bit.
        std::vector<std::size_t> bits;
        std::vector<std::size_t> images;
        for (std::size_t j = 0; j < tau.size(); ++j)
            for (std::size_t b = 0; b < copy_bits; ++b) {
                bits.push_back(block_start[j] + b);
                images.push_back(tau(j) * copy_bits + b);
            }
        ReversibleCircuit body(c.num_bits());
        body.add(gate::WirePermutation{std::move(bits), Permutation(std::move(images))});
        c.append(controlled_on_value(branch_bits, t, body));
    }
}

}  // namespace

BranchOverlapVerifier compile_circuit(const BranchOverlapVerifier& v_in, const CollapsePlan& plan,
                                      const SimulationLimits& limits) {
    const std::size_t k = v_in.register_bits().size();
    if (k != plan.k) throw std::invalid_argument("compile_circuit: verifier has wrong prover count");
    for (std::size_t i = 0; i < k; ++i)
        if ((std::size_t{1} << v_in.register_bits()[i]) != plan.base_dims[i])
            throw std::invalid_argument("compile_circuit: register widths differ from the plan");

    const BranchOverlapVerifier v = acceptance_as_overlap(v_in, limits);
    const std::size_t r = plan.R_actual;
    const DyadicPermutationSampler sampler(r, plan.construction_eta());
    const std::size_t q = sampler.q();
    const std::vector<std::size_t>& nb = v.register_bits();

    // Witness layout: R copies of each of the first k-1 registers, then A_k.
    std::vector<std::size_t> reg_bits;
    std::vector<std::vector<std::size_t>> copy_start(k - 1);
    std::size_t pos = 0;
    for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t j = 0; j < r; ++j) {
            reg_bits.push_back(nb[i]);
            copy_start[i].push_back(pos);
            pos += nb[i];
        }
    reg_bits.push_back(nb[k - 1]);
    const std::size_t last_start = pos;
    const std::size_t w = pos + nb[k - 1];
    const std::size_t z = v.ancilla().zeros;
    const std::size_t rp = v.ancilla().pluses;
    const std::size_t branch_bits = (r > 1 && sampler.Q() > 1) ? q : 0;
    const std::size_t total = w + z + rp + 2 * (k - 1) * branch_bits;
    if (total > limits.max_bits)
        throw std::length_error("compile_circuit: " + std::to_string(total) + " bits exceed the simulation cap");

    const std::size_t t_start = w + z + rp;
    const std::size_t u_start = t_start + (k - 1) * branch_bits;
    auto branch = [&](std::size_t start, std::size_t i) {
        std::vector<std::size_t> bits(branch_bits);
        std::iota(bits.begin(), bits.end(), start + i * branch_bits);
        return bits;
    };

    ReversibleCircuit c(total);
    if (branch_bits > 0)
        for (std::size_t i = 0; i + 1 < k; ++i) add_routing(c, sampler, branch(u_start, i), copy_start[i], nb[i]);

    // The acceptance-overlap circuit on copy 1 of each block, A_k and v's ancillas.
    std::vector<std::size_t> mapping;
    for (std::size_t i = 0; i + 1 < k; ++i)
        for (std::size_t b = 0; b < nb[i]; ++b) mapping.push_back(copy_start[i][0] + b);
    for (std::size_t b = 0; b < nb[k - 1]; ++b) mapping.push_back(last_start + b);
    for (std::size_t a = 0; a < z + rp; ++a) mapping.push_back(w + a);
    c.append(v.circuit().relabel(mapping, total));

    if (branch_bits > 0)
        for (std::size_t i = 0; i + 1 < k; ++i) add_routing(c, sampler, branch(t_start, i), copy_start[i], nb[i]);

    return BranchOverlapVerifier(std::move(reg_bits), AncillaSpec{z, rp + 2 * (k - 1) * branch_bits}, std::move(c));
}

GapAudit gap_audit(const RealOperator& m, const CollapsePlan& plan, const CompiledExtensionVerifier& compiled) {
    if (m.layout.size() > 3) throw std::domain_error("gap_audit: product value oracle needs m <= 3");
    for (std::size_t d : m.layout.dims())
        if (d > 4) throw std::domain_error("gap_audit: product value oracle needs every d_i <= 4");
    GapAudit a;
    a.omega_lower = omega_plus_alternating(m).value;
    a.witness_label = "best known witness (alternating maximizer)";
    bool grid = m.layout.size() <= 2;
    for (std::size_t d : m.layout.dims()) grid = grid && d <= 3;
    if (grid) {
        const double g = omega_plus_grid(m, 200);
        if (g > a.omega_lower) {
            a.omega_lower = g;
            a.witness_label = "best known witness (grid oracle)";
        }
    }
    a.lambda_exact = lambda_max(compiled.exact_E.matrix);
    a.omega_upper = a.lambda_exact;
    a.lambda_tilde = lambda_max(compiled.tilde_E.matrix);
    a.eigen_shift = std::abs(a.lambda_tilde - a.lambda_exact);
    a.perturbation_holds = a.eigen_shift <= plan.construction_alpha() + 1e-9;
    a.yes_case_holds = a.lambda_tilde >= a.omega_lower - plan.construction_alpha() - 1e-9;
    a.observed_slack = a.lambda_tilde - a.omega_lower;
    return a;
}

}  // namespace stoqext
