#pragma once

// The nonnegative product value: max of <⊗x_i, M ⊗x_i> over entrywise
// nonnegative unit vectors x_i, one per register.

#include <cstdint>
#include <vector>

#include "stoqext/tensor.hpp"

namespace stoqext {

class ProductWitness {
public:
    ProductWitness() = default;
    /// Validates nonnegativity and unit norm of each factor (within `tol`).
    explicit ProductWitness(std::vector<VectorXd> factors, double tol = 1e-10);

    /// Unvalidated; use for signed witnesses in comparisons.
    static ProductWitness unchecked(std::vector<VectorXd> factors);

    const std::vector<VectorXd>& factors() const { return factors_; }
    std::size_t size() const { return factors_.size(); }
    const VectorXd& operator[](std::size_t i) const { return factors_.at(i); }

    VectorXd kron() const;
    ProductWitness abs() const;
    bool matches(const RegisterLayout& layout) const;

private:
    std::vector<VectorXd> factors_;
};

double product_value(const RealOperator& m, const ProductWitness& w);

/// Brute-force maximum: spherical-coordinate grids (grid_points per angle)
/// over the leading registers, exact face enumeration on the last one.
/// Oracle regime only: every d_i <= 3, m <= 3.
double omega_plus_grid(const RealOperator& m, std::size_t grid_points);
/// Lipschitz slack of the grid for a contraction: 4 m pi / grid_points.
double grid_tolerance(const RealOperator& m, std::size_t grid_points);

struct AlternatingOptions {
    int restarts = 50;
    std::uint64_t seed = 1;
    double stagnation_tol = 1e-10;
    int max_sweeps = 10000;
    bool record_history = false;
};

struct AlternatingResult {
    double value = 0.0;
    ProductWitness witness;
    /// Per restart, the value after every single-factor update (if recorded).
    std::vector<std::vector<double>> history;
    int total_sweeps = 0;
};

/// Block-coordinate ascent with Perron-choice factor updates and seeded
/// nonnegative restarts. The returned value is always a feasible lower bound.
AlternatingResult omega_plus_alternating(const RealOperator& m, const AlternatingOptions& opt = {});

/// Perron choice for a symmetric entrywise nonnegative matrix: a nonnegative
/// unit top eigenvector, resolved deterministically against `previous` when
/// the top eigenvalue is degenerate.
VectorXd perron_vector(const MatrixXd& k, const VectorXd& previous);

/// K_i = <x_{-i}| M |x_{-i}>: the matrix on register i induced by fixing every
/// other factor.
MatrixXd induced_matrix(const RealOperator& m, const std::vector<VectorXd>& factors, std::size_t i);

}  // namespace stoqext
