#pragma once

// Symmetric subspaces in the occupation-number basis.
//
// A basis vector of Sym^R(A), dim A = d, is labelled by its occupation vector
// n = (n_1, ..., n_d) with sum n_j = R and equals
//   sqrt(prod_j n_j! / R!) * sum of |s> over strings s with occupation n.
// Occupation vectors are ordered lexicographically, largest first, so that
// for R = 1 occupation index j is basis vector |j>.

#include <Eigen/SparseCore>

#include <map>
#include <vector>

#include "stoqext/tensor.hpp"

namespace stoqext {

using SparseMatrixXd = Eigen::SparseMatrix<double, Eigen::RowMajor>;
using Occupation = std::vector<std::size_t>;

std::size_t binomial(std::size_t n, std::size_t k);

class SymmetricBasis {
public:
    SymmetricBasis(std::size_t local_dim, std::size_t copies);

    std::size_t local_dim() const { return d_; }
    std::size_t copies() const { return r_; }
    std::size_t size() const { return occupations_.size(); }
    const std::vector<Occupation>& occupations() const { return occupations_; }
    const Occupation& occupation(std::size_t k) const { return occupations_.at(k); }
    /// Throws std::out_of_range for an occupation not in this basis.
    std::size_t index_of(const Occupation& n) const;

    /// Isometry Sym^R(A) -> A^{⊗R}; shape d^R x size().
    SparseMatrixXd isometry() const;

    /// Isometry Sym^R(A) -> A ⊗ Sym^{R-1}(A) splitting off the first copy:
    /// |n> -> sum_j sqrt(n_j / R) |j> ⊗ |n - e_j>. Rows indexed j * size(R-1) + k.
    SparseMatrixXd first_copy_split() const;

    /// (<a| ⊗ I) restricted to the symmetric subspaces: Sym^R -> Sym^{R-1},
    /// |n> -> sqrt(n_a / R) |n - e_a>.
    SparseMatrixXd remove_copy(std::size_t outcome) const;

    /// Coordinates of x^{⊗R}: sqrt(R! / prod n_j!) prod_j x_j^{n_j}.
    VectorXd lift(const VectorXd& x) const;

private:
    std::size_t d_, r_;
    std::vector<Occupation> occupations_;
    std::map<Occupation, std::size_t> index_;
};

/// Orthogonal projector onto Sym^R(A), computed as the average of all copy
/// permutations. Requires d^R <= max_dim.
RealOperator sym_projector(std::size_t local_dim, std::size_t copies, std::size_t max_dim = 4096);

/// Sym^{r_1}(A_1) ⊗ ... ⊗ Sym^{r_{m-1}}(A_{m-1}) ⊗ A_m for base registers
/// A_1..A_m. Compressed coordinates are (occupation index per block, a_m).
class SeparatelySymmetricSpace {
public:
    SeparatelySymmetricSpace(RegisterLayout base, std::vector<std::size_t> copies);

    const RegisterLayout& base() const { return base_; }
    const std::vector<std::size_t>& copies() const { return copies_; }
    std::size_t blocks() const { return copies_.size(); }
    const SymmetricBasis& block(std::size_t i) const { return blocks_.at(i); }
    const SymmetricBasis& reduced_block(std::size_t i) const { return reduced_.at(i); }

    const RegisterLayout& compressed_layout() const { return compressed_; }
    std::size_t dim() const { return compressed_.total_dim(); }
    /// Product of the reduced (one copy fewer) block sizes.
    std::size_t rest_dim() const { return rest_.total_dim(); }
    const RegisterLayout& rest_layout() const { return rest_; }

    /// (d_1, ..., d_1, d_2, ..., d_m): r_i copies of each extended register.
    RegisterLayout full_layout() const;
    /// Positions of A_{1,1}, ..., A_{m-1,1}, A_m inside full_layout().
    std::vector<std::size_t> tested_positions() const;

    /// Isometry into (tested registers) ⊗ (reduced blocks); rows indexed
    /// alpha * rest_dim() + rest with alpha a base() index.
    const SparseMatrixXd& first_copy_split() const { return split_; }
    /// Isometry into full_layout() coordinates.
    SparseMatrixXd isometry() const;

    /// Copy counts after conditioning one copy of `block` away.
    std::vector<std::size_t> copies_after_removal(std::size_t block) const;
    /// Sparse map compressed -> compressed(copies_after_removal(block)) applying
    /// <outcome| on the first copy of that block.
    SparseMatrixXd remove_copy(std::size_t block, std::size_t outcome) const;

private:
    RegisterLayout base_;
    std::vector<std::size_t> copies_;
    std::vector<SymmetricBasis> blocks_;
    std::vector<SymmetricBasis> reduced_;
    RegisterLayout compressed_;
    RegisterLayout rest_;
    SparseMatrixXd split_;
};

}  // namespace stoqext
