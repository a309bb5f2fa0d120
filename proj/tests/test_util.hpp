#pragma once

#include <Eigen/Dense>

#include <cstdint>
#include <random>
#include <vector>

#include "stoqext/tensor.hpp"

namespace testutil {

using stoqext::MatrixXd;
using stoqext::VectorXd;

inline MatrixXd random_symmetric(Eigen::Index n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    MatrixXd a(n, n);
    for (Eigen::Index i = 0; i < n; ++i)
        for (Eigen::Index j = 0; j < n; ++j) a(i, j) = g(rng);
    return (a + a.transpose()) / 2.0;
}

inline VectorXd random_unit(Eigen::Index n, std::uint64_t seed, bool nonneg = false) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    VectorXd v(n);
    for (Eigen::Index i = 0; i < n; ++i) v(i) = nonneg ? std::abs(g(rng)) + 1e-3 : g(rng);
    return v / v.norm();
}

inline VectorXd random_probs(Eigen::Index n, std::uint64_t seed, double zero_prob = 0.0) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    VectorXd v(n);
    do {
        for (Eigen::Index i = 0; i < n; ++i) v(i) = u(rng) < zero_prob ? 0.0 : u(rng);
    } while (v.sum() <= 0.0);
    return v / v.sum();
}

/// Row-major mixed-radix digits, first digit most significant.
inline std::vector<std::size_t> digits_of(std::size_t x, const std::vector<std::size_t>& dims) {
    std::vector<std::size_t> d(dims.size());
    for (std::size_t k = dims.size(); k-- > 0;) {
        d[k] = x % dims[k];
        x /= dims[k];
    }
    return d;
}

inline std::size_t index_of(const std::vector<std::size_t>& digits, const std::vector<std::size_t>& dims) {
    std::size_t x = 0;
    for (std::size_t k = 0; k < dims.size(); ++k) x = x * dims[k] + digits[k];
    return x;
}

inline std::size_t product(const std::vector<std::size_t>& dims) {
    std::size_t n = 1;
    for (std::size_t d : dims) n *= d;
    return n;
}

}  // namespace testutil
