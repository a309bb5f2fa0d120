#pragma once

// The separately symmetric extension of a test operator M on A_1 ⊗ ... ⊗ A_m:
//   E_R(M) = P (M on A_{1,1} ... A_{m-1,1} A_m ⊗ I_rest) P,
// P = Pi_R(A_1) ⊗ ... ⊗ Pi_R(A_{m-1}) ⊗ I(A_m), and Lambda_R = lambda_max(E_R).

#include <optional>
#include <vector>

#include "stoqext/product_value.hpp"
#include "stoqext/spectrum.hpp"
#include "stoqext/symmetric.hpp"

namespace stoqext {

struct ExtensionOptions {
    std::size_t max_dim = 4096;
    /// Register order applied before extending; the last entry is the
    /// unextended register. Empty means the natural order.
    std::vector<std::size_t> order;
};

/// M with its registers rearranged: new register j is old register order[j].
RealOperator permute_registers(const RealOperator& m, const std::vector<std::size_t>& order);

/// Pi_R^{<m} on the full extended space.
RealOperator extension_projector(const RegisterLayout& base, std::size_t copies, std::size_t max_dim = 4096);

/// Full-space extension operator (cross-validation path for tiny sizes).
RealOperator extension_operator(const RealOperator& m, std::size_t copies, const ExtensionOptions& opt = {});

/// The extension in separately symmetric coordinates: V^T E_R V with V the
/// separately symmetric isometry. Same nonzero spectrum as the full operator.
RealOperator extension_operator_compressed(const RealOperator& m, std::size_t copies,
                                           const ExtensionOptions& opt = {});

/// Lambda_R via the compressed operator.
double extension_lambda_max(const RealOperator& m, std::size_t copies, const ExtensionOptions& opt = {},
                            const EigenOptions& eig = {});

/// x_1^{⊗R} ⊗ ... ⊗ x_{m-1}^{⊗R} ⊗ x_m in compressed coordinates.
VectorXd lift_product_witness(const ProductWitness& w, std::size_t copies);
/// Same vector in full extended coordinates.
VectorXd lift_product_witness_full(const ProductWitness& w, std::size_t copies);

struct SandwichReport {
    std::size_t copies = 0;
    double omega_lower = 0.0;  ///< best available lower bound on the product value
    double lambda_R = 0.0;
    std::optional<double> lambda_previous;  ///< Lambda_{R-1}, when R >= 2
    bool lift_holds = false;
    bool monotone_holds = true;
    /// Observed Lambda_R - omega_lower: the smallest epsilon the two-sided
    /// bound would need at this R.
    double implied_epsilon = 0.0;
};

/// `omega_lower` is the best known lower bound on the product value; if not
/// given, the alternating maximizer (and the grid in the oracle regime) is run.
SandwichReport check_sandwich(const RealOperator& m, std::size_t copies,
                              std::optional<double> omega_lower = std::nullopt,
                              const ExtensionOptions& opt = {}, double tol = 1e-9);

}  // namespace stoqext
