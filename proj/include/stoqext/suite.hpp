#pragma once

// Invariant suites: each runs a family of checks over a list of instances and
// returns a Report. Suites that sweep fixed parameter grids ("symmetrizer",
// "plan-arithmetic") ignore the instance list.

#include <cstdint>
#include <string>
#include <vector>

#include "stoqext/io.hpp"

namespace stoqext {

struct SuiteConfig {
    std::uint64_t seed = 1;
    double tol = 1e-9;
    std::size_t max_dim = 4096;
    std::size_t max_copies = 5;  ///< largest R in extension sweeps
    std::size_t r_actual = 2;    ///< copies used by the collapse suite
    double eta = 0.25;           ///< sampler accuracy used by the collapse suite
    double c = 0.7, s = 0.5;     ///< completeness and soundness for collapse plans
    double epsilon = 0.5;        ///< rounding accuracy for adaptive rounding
    std::size_t grid_points = 120;
};

Json to_json(const SuiteConfig& c);

std::vector<std::string> suite_names();
/// Throws std::invalid_argument for unknown suites or incompatible instances.
Report run_suite(const std::string& suite, const std::vector<InstanceFile>& instances, const SuiteConfig& config = {});

}  // namespace stoqext
