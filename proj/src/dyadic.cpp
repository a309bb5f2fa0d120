#include "stoqext/dyadic.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "stoqext/symmetric.hpp"

namespace stoqext {

std::uint64_t factorial(std::size_t n) {
    if (n > 20) throw std::overflow_error("factorial: argument too large");
    std::uint64_t f = 1;
    for (std::size_t k = 2; k <= n; ++k) f *= k;
    return f;
}

Permutation unrank_permutation(std::size_t copies, std::uint64_t rank) {
    if (rank >= factorial(copies)) throw std::out_of_range("unrank_permutation: rank out of range");
    std::vector<std::size_t> pool(copies);
    for (std::size_t i = 0; i < copies; ++i) pool[i] = i;
    std::vector<std::size_t> images;
    images.reserve(copies);
    for (std::size_t k = copies; k-- > 0;) {
        const std::uint64_t f = factorial(k);
        const auto digit = static_cast<std::size_t>(rank / f);
        rank %= f;
        images.push_back(pool[digit]);
        pool.erase(pool.begin() + static_cast<std::ptrdiff_t>(digit));
    }
    return Permutation(std::move(images));
}

DyadicPermutationSampler::DyadicPermutationSampler(std::size_t copies, double eta) : r_(copies), eta_(eta) {
    if (!(eta > 0.0 && eta < 1.0)) throw std::invalid_argument("build_sampler: eta must be in (0,1)");
    if (copies < 1 || copies > 12) throw std::invalid_argument("build_sampler: R must be in [1, 12]");
    n_ = factorial(copies);
    // eta * 2^q is exact in binary floating point, so the test 2N <= eta 2^q is exact.
    while (2.0 * static_cast<double>(n_) > std::ldexp(eta, static_cast<int>(q_))) {
        if (++q_ > 62) throw std::overflow_error("build_sampler: eta too small for 64-bit branch strings");
    }
    l_ = Q() / n_;
    b_ = Q() - l_ * n_;
}

Permutation DyadicPermutationSampler::tau(std::uint64_t j) const { return unrank_permutation(r_, j); }

std::uint64_t DyadicPermutationSampler::rank_of(std::uint64_t t) const {
    if (t >= Q()) throw std::out_of_range("pi_of: branch string out of range");
    return t < l_ * n_ ? t % n_ : 0;
}

Permutation DyadicPermutationSampler::pi_of(std::uint64_t t) const { return tau(rank_of(t)); }

Rational DyadicPermutationSampler::probability(const Permutation& tau) const {
    if (tau.size() != r_) throw std::invalid_argument("probability: permutation size mismatch");
    const Rational q(Q());
    return tau.is_identity() ? Rational(l_ + b_) / q : Rational(l_) / q;
}

std::map<Permutation, Rational> DyadicPermutationSampler::distribution() const {
    if (n_ > 40320) throw std::length_error("distribution: R! too large to tabulate");
    std::map<Permutation, Rational> out;
    for (std::uint64_t j = 0; j < n_; ++j) {
        Permutation p = tau(j);
        Rational pr = probability(p);
        out.emplace(std::move(p), std::move(pr));
    }
    return out;
}

Rational DyadicPermutationSampler::total_variation() const {
    const Rational uniform = Rational(1) / Rational(n_);
    const Rational q(Q());
    const Rational id_dev = abs(Rational(l_ + b_) / q - uniform);
    const Rational other_dev = abs(Rational(l_) / q - uniform);
    return id_dev + Rational(n_ - 1) * other_dev;
}

unsigned DyadicPermutationSampler::closed_form_q() const {
    return static_cast<unsigned>(std::ceil(std::log2(2.0 * static_cast<double>(n_) / eta_)));
}

DyadicPermutationSampler build_sampler(std::size_t copies, double eta) { return {copies, eta}; }

RealOperator approx_projector(const DyadicPermutationSampler& s, std::size_t local_dim, std::size_t max_dim) {
    const RegisterLayout layout(std::vector<std::size_t>(s.copies(), local_dim));
    if (layout.total_dim() > max_dim)
        throw std::length_error("approx_projector: dimension " + std::to_string(layout.total_dim()) +
                                " exceeds cap " + std::to_string(max_dim));
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    MatrixXd acc = MatrixXd::Zero(n, n);
    for (std::uint64_t j = 0; j < s.N(); ++j) {
        const Permutation t = s.tau(j);
        const double p = s.probability(t).convert_to<double>();
        acc += p * copy_permutation<double>(t, local_dim).matrix;
    }
    return RealOperator(layout, std::move(acc));
}

}  // namespace stoqext
