#pragma once

// Collapsing k unentangled provers to one: the parameter schedule, the
// dyadic-symmetrized extension Ẽ = Π̃ (M ⊗ I) Π̃, a branch-overlap circuit
// realizing it, and the gap accounting.

#include <optional>
#include <string>
#include <vector>

#include "stoqext/dyadic.hpp"
#include "stoqext/verifier.hpp"

namespace stoqext {

struct CollapsePlan {
    std::size_t k = 2;
    std::vector<std::size_t> base_dims;
    double c = 0.0, s = 0.0;
    double delta_gap = 0.0;  ///< c - s
    double epsilon = 0.0;    ///< delta_gap / 4
    double B = 1.0;          ///< max{1, sum_i log d_i}
    /// 1 + ceil(128 B (k-1)^2 / epsilon^3); held as a double since it can be
    /// astronomically large.
    double R_theoretical = 0.0;
    double eta = 0.0;    ///< delta_gap / (64 (k-1))
    double alpha = 0.0;  ///< 2 (k-1) eta
    double c_prime = 0.0, s_prime = 0.0, gap_prime = 0.0;
    std::size_t R_actual = 1;
    /// Sampler accuracy used for construction; defaults to `eta`.
    std::optional<double> eta_actual;

    double construction_eta() const { return eta_actual.value_or(eta); }
    /// 2 (k-1) * construction_eta(): the perturbation allowance at desk scale.
    double construction_alpha() const { return 2.0 * static_cast<double>(k - 1) * construction_eta(); }
};

CollapsePlan plan(std::size_t k, const std::vector<std::size_t>& dims, double c, double s, std::size_t r_actual,
                  std::optional<double> eta_actual = std::nullopt);

struct CompiledExtensionVerifier {
    CollapsePlan plan;
    RealOperator tilde_pi;  ///< ⊗_i Π_{R,η}(A_i) ⊗ I(A_k)
    RealOperator tilde_E;
    RealOperator tilde_C;  ///< (I + Ẽ) / 2
    RealOperator exact_E;  ///< 𝓔 at R_actual
    double perturbation = 0.0;  ///< ||Ẽ - 𝓔||
    bool perturbation_holds = false;  ///< <= construction_alpha() + 1e-9
    std::optional<BranchOverlapVerifier> circuit;
};

/// Dense construction; `max_dim` caps the full extended dimension.
CompiledExtensionVerifier compile_matrices(const RealOperator& m, const CollapsePlan& plan,
                                           std::size_t max_dim = 4096);

/// One-witness verifier on W = A_1^{⊗R} ⊗ ... ⊗ A_{k-1}^{⊗R} ⊗ A_k whose
/// Hermitian overlap is Ẽ for M the acceptance matrix of `v`.
/// Ancillas: v's zeros; pluses are v's pluses, the acceptance branch bit,
/// t_1..t_{k-1}, then u_1..u_{k-1} (q bits each).
BranchOverlapVerifier compile_circuit(const BranchOverlapVerifier& v, const CollapsePlan& plan,
                                      const SimulationLimits& limits = {});

struct GapAudit {
    double omega_lower = 0.0;  ///< best known product value (feasible witness)
    double omega_upper = 0.0;  ///< Λ_{R_actual} >= ω₊
    double lambda_exact = 0.0;
    double lambda_tilde = 0.0;
    double eigen_shift = 0.0;  ///< |λ(Ẽ) - λ(𝓔)|
    bool perturbation_holds = false;
    bool yes_case_holds = false;  ///< λ(Ẽ) >= omega_lower - alpha - 1e-9
    /// λ(Ẽ) - omega_lower; the no-case bound needs R_theoretical copies and
    /// is not certified at R_actual.
    double observed_slack = 0.0;
    std::string no_case_status = "not certified at R_actual";
    std::string witness_label;
};

GapAudit gap_audit(const RealOperator& m, const CollapsePlan& plan, const CompiledExtensionVerifier& compiled);

}  // namespace stoqext
