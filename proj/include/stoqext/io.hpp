#pragma once

// JSON instance files, seeded generators and check reports.

#include <json.hpp>

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "stoqext/collapse.hpp"
#include "stoqext/distances.hpp"
#include "stoqext/product_value.hpp"
#include "stoqext/rounding.hpp"
#include "stoqext/verifier.hpp"

namespace stoqext {

using Json = nlohmann::json;

inline constexpr int kFormatVersion = 1;

Json to_json(const RealOperator& m);
RealOperator operator_from_json(const Json& j);
Json to_json(const ReversibleCircuit& c);
ReversibleCircuit circuit_from_json(const Json& j);
Json to_json(const BranchOverlapVerifier& v);
BranchOverlapVerifier verifier_from_json(const Json& j);
Json to_json(const JointDistribution& p);
JointDistribution distribution_from_json(const Json& j);
Json to_json(const BosonicState& s);
BosonicState bosonic_state_from_json(const Json& j);
Json to_json(const ProductWitness& w);
ProductWitness witness_from_json(const Json& j);

enum class InstanceKind { verifier, matrix, distribution, bosonic_state };
std::string to_string(InstanceKind k);
InstanceKind instance_kind_from_string(const std::string& s);

struct InstanceMetadata {
    std::uint64_t seed = 0;
    std::string generator;
    std::vector<std::size_t> dims;
    std::string notes;
    /// Known reference values, e.g. "product_value", "lambda_max".
    std::map<std::string, double> known;
};

struct InstanceFile {
    int version = kFormatVersion;
    InstanceKind kind = InstanceKind::matrix;
    Json payload;
    InstanceMetadata metadata;

    BranchOverlapVerifier verifier() const;
    RealOperator matrix() const;
    JointDistribution distribution() const;
    BosonicState bosonic_state() const;
    /// A product witness stored alongside a matrix, if any.
    std::optional<ProductWitness> witness() const;

    static InstanceFile of(const BranchOverlapVerifier& v, InstanceMetadata meta = {});
    static InstanceFile of(const RealOperator& m, InstanceMetadata meta = {});
    static InstanceFile of(const JointDistribution& p, InstanceMetadata meta = {});
    static InstanceFile of(const BosonicState& s, InstanceMetadata meta = {});
};

Json to_json(const InstanceFile& f);
InstanceFile instance_from_json(const Json& j);

/// Reads one instance or a JSON array of instances.
std::vector<InstanceFile> read_instances(const std::filesystem::path& path);
void write_json(const std::filesystem::path& path, const Json& j);

/// Generators:
///   "circuit"              register_bits, zeros, pluses, gates
///   "nonneg-psd"           dims, scale (<= 1), density
///   "planted"              dims, w, scale, density
///   "maximally-entangled"  d
///   "distribution"         dims, sparsity
///   "bosonic-state"        dims, copies
/// Unknown names and invalid parameters throw std::invalid_argument.
InstanceFile generate_instance(const std::string& generator, const Json& params, std::uint64_t seed);
std::vector<std::string> generator_names();

/// Random nonnegative PSD contraction B^T B / ||B^T B|| * scale.
RealOperator random_nonneg_psd(const RegisterLayout& layout, std::uint64_t seed, double scale = 1.0,
                               double density = 0.6);
/// |Φ><Φ| with |Φ> = d^{-1/2} sum_i |i,i>.
RealOperator maximally_entangled_projector(std::size_t d);

struct CheckRecord {
    std::string name;
    std::string anchor;    ///< the inequality or identity being checked
    std::string relation;  ///< "<=", ">=", "==" or "holds"
    double lhs = 0.0;
    double rhs = 0.0;
    double tolerance = 0.0;
    bool passed = false;
    Json measured = Json::object();
};

CheckRecord check_le(std::string name, std::string anchor, double lhs, double rhs, double tol);
CheckRecord check_ge(std::string name, std::string anchor, double lhs, double rhs, double tol);
CheckRecord check_eq(std::string name, std::string anchor, double lhs, double rhs, double tol);
CheckRecord check_true(std::string name, std::string anchor, bool ok);

struct Report {
    std::string suite;
    Json config = Json::object();
    std::vector<CheckRecord> records;

    std::size_t passed() const;
    std::size_t failed() const { return records.size() - passed(); }
    bool ok() const { return failed() == 0; }
    void add(CheckRecord r) { records.push_back(std::move(r)); }
    /// Sorts records by name (stable) for order-independent output.
    void finalize();
};

/// One record per conditioning step.
Json to_json(const RoundingTrace& t);
Json to_json(const AdaptiveRoundResult& r);
Json to_json(const CollapsePlan& p);
Json to_json(const GapAudit& a);

Json to_json(const CheckRecord& r);
Json to_json(const Report& r);

}  // namespace stoqext
