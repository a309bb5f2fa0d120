#pragma once

// Dyadic inverse-invariant distribution on S_R: Q = 2^q branch strings, each
// nonidentity permutation hit L times, the identity L + b times.

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>
#include <map>

#include "stoqext/permutation.hpp"
#include "stoqext/tensor.hpp"

namespace stoqext {

using Rational = boost::multiprecision::cpp_rational;

/// Lexicographic unranking via the factorial number system; rank 0 is the
/// identity. Requires rank < R!.
Permutation unrank_permutation(std::size_t copies, std::uint64_t rank);
std::uint64_t factorial(std::size_t n);

class DyadicPermutationSampler {
public:
    /// 0 < eta < 1, 1 <= R <= 12.
    DyadicPermutationSampler(std::size_t copies, double eta);

    std::size_t copies() const { return r_; }
    double eta() const { return eta_; }
    unsigned q() const { return q_; }
    std::uint64_t N() const { return n_; }
    std::uint64_t Q() const { return std::uint64_t{1} << q_; }
    std::uint64_t L_count() const { return l_; }
    std::uint64_t b() const { return b_; }

    /// tau_j in the fixed enumeration.
    Permutation tau(std::uint64_t j) const;
    /// Permutation addressed by branch string t in [0, Q).
    Permutation pi_of(std::uint64_t t) const;
    /// Rank j with pi_of(t) = tau_j.
    std::uint64_t rank_of(std::uint64_t t) const;

    Rational probability(const Permutation& tau) const;
    /// Full table; requires R! <= 40320.
    std::map<Permutation, Rational> distribution() const;
    /// sum_tau |p(tau) - 1/N|, exact.
    Rational total_variation() const;
    /// ceil(log2(2N / eta)), the closed-form branch count.
    unsigned closed_form_q() const;

private:
    std::size_t r_;
    double eta_;
    unsigned q_ = 0;
    std::uint64_t n_ = 1, l_ = 0, b_ = 0;
};

DyadicPermutationSampler build_sampler(std::size_t copies, double eta);

/// E_t U_{pi(t)} on A^{⊗R}, dim A = local_dim.
RealOperator approx_projector(const DyadicPermutationSampler& s, std::size_t local_dim, std::size_t max_dim = 4096);

}  // namespace stoqext
