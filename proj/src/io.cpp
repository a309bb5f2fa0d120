#include "stoqext/io.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <numeric>
#include <random>
#include <stdexcept>

namespace stoqext {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

std::vector<std::size_t> dims_of(const RegisterLayout& l) { return l.dims(); }

Json vector_json(const VectorXd& v) { return Json(std::vector<double>(v.data(), v.data() + v.size())); }

VectorXd vector_from(const Json& j) {
    const auto vals = j.get<std::vector<double>>();
    return Eigen::Map<const VectorXd>(vals.data(), static_cast<Eigen::Index>(vals.size()));
}

MatrixXd matrix_from(const Json& j, std::size_t rows, std::size_t cols) {
    const auto vals = j.get<std::vector<double>>();
    if (vals.size() != rows * cols) throw std::invalid_argument("matrix payload has wrong length");
    MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
    for (std::size_t r = 0; r < rows; ++r)
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = vals[r * cols + c];
    return m;
}

Json matrix_json(const MatrixXd& m) {
    std::vector<double> vals;
    vals.reserve(static_cast<std::size_t>(m.size()));
    for (Eigen::Index r = 0; r < m.rows(); ++r)
        for (Eigen::Index c = 0; c < m.cols(); ++c) vals.push_back(m(r, c));
    return vals;
}

template <class T>
T param(const Json& p, const char* key, T fallback) {
    return p.contains(key) ? p.at(key).get<T>() : fallback;
}

}  // namespace

Json to_json(const RealOperator& m) {
    return {{"dims", dims_of(m.layout)},
            {"rows", m.matrix.rows()},
            {"cols", m.matrix.cols()},
            {"data", matrix_json(m.matrix)}};
}

RealOperator operator_from_json(const Json& j) {
    const RegisterLayout layout(j.at("dims").get<std::vector<std::size_t>>());
    const auto rows = j.at("rows").get<std::size_t>();
    const auto cols = j.at("cols").get<std::size_t>();
    return RealOperator(layout, matrix_from(j.at("data"), rows, cols));
}

Json to_json(const ReversibleCircuit& c) {
    Json gates = Json::array();
    for (const Gate& g : c.gates())
        gates.push_back(std::visit(
            overloaded{
                [](const gate::Not& x) -> Json { return {{"op", "not"}, {"target", x.target}}; },
                [](const gate::Cnot& x) -> Json {
                    return {{"op", "cnot"}, {"control", x.control}, {"target", x.target}};
                },
                [](const gate::Toffoli& x) -> Json {
                    return {{"op", "toffoli"}, {"controls", {x.control1, x.control2}}, {"target", x.target}};
                },
                [](const gate::Swap& x) -> Json { return {{"op", "swap"}, {"bits", {x.a, x.b}}}; },
                [](const gate::WirePermutation& x) -> Json {
                    return {{"op", "wire_permutation"}, {"bits", x.bits}, {"perm", x.perm.images()}};
                },
                [](const gate::ControlledSubcircuit& x) -> Json {
                    return {{"op", "controlled"}, {"control", x.control}, {"body", to_json(*x.body)}};
                },
            },
            g));
    return {{"num_bits", c.num_bits()}, {"gates", gates}};
}

ReversibleCircuit circuit_from_json(const Json& j) {
    ReversibleCircuit c(j.at("num_bits").get<std::size_t>());
    for (const Json& g : j.at("gates")) {
        const auto op = g.at("op").get<std::string>();
        if (op == "not") {
            c.add(gate::Not{g.at("target").get<std::size_t>()});
        } else if (op == "cnot") {
            c.add(gate::Cnot{g.at("control").get<std::size_t>(), g.at("target").get<std::size_t>()});
        } else if (op == "toffoli") {
            const auto ctl = g.at("controls").get<std::vector<std::size_t>>();
            if (ctl.size() != 2) throw std::invalid_argument("toffoli needs two controls");
            c.add(gate::Toffoli{ctl[0], ctl[1], g.at("target").get<std::size_t>()});
        } else if (op == "swap") {
            const auto bits = g.at("bits").get<std::vector<std::size_t>>();
            if (bits.size() != 2) throw std::invalid_argument("swap needs two bits");
            c.add(gate::Swap{bits[0], bits[1]});
        } else if (op == "wire_permutation") {
            c.add(gate::WirePermutation{g.at("bits").get<std::vector<std::size_t>>(),
                                        Permutation(g.at("perm").get<std::vector<std::size_t>>())});
        } else if (op == "controlled") {
            c.add(gate::ControlledSubcircuit{g.at("control").get<std::size_t>(),
                                             std::make_shared<const ReversibleCircuit>(circuit_from_json(g.at("body")))});
        } else {
            throw std::invalid_argument("unknown gate op '" + op + "'");
        }
    }
    return c;
}

Json to_json(const BranchOverlapVerifier& v) {
    return {{"register_bits", v.register_bits()},
            {"zeros", v.ancilla().zeros},
            {"pluses", v.ancilla().pluses},
            {"circuit", to_json(v.circuit())}};
}

BranchOverlapVerifier verifier_from_json(const Json& j) {
    return BranchOverlapVerifier(j.at("register_bits").get<std::vector<std::size_t>>(),
                                 AncillaSpec{j.at("zeros").get<std::size_t>(), j.at("pluses").get<std::size_t>()},
                                 circuit_from_json(j.at("circuit")));
}

Json to_json(const JointDistribution& p) { return {{"dims", dims_of(p.layout())}, {"probs", vector_json(p.probs())}}; }

JointDistribution distribution_from_json(const Json& j) {
    return JointDistribution(RegisterLayout(j.at("dims").get<std::vector<std::size_t>>()), vector_from(j.at("probs")));
}

Json to_json(const BosonicState& s) {
    Json j{{"base_dims", dims_of(s.space().base())}, {"copies", s.space().copies()}};
    if (s.is_pure()) {
        j["representation"] = "pure";
        j["data"] = vector_json(s.vector());
    } else {
        j["representation"] = "mixed";
        j["data"] = matrix_json(s.density());
    }
    return j;
}

BosonicState bosonic_state_from_json(const Json& j) {
    auto space = std::make_shared<const SeparatelySymmetricSpace>(
        RegisterLayout(j.at("base_dims").get<std::vector<std::size_t>>()),
        j.at("copies").get<std::vector<std::size_t>>());
    const auto rep = j.at("representation").get<std::string>();
    if (rep == "pure") return BosonicState::pure(space, vector_from(j.at("data")));
    if (rep == "mixed") return BosonicState::mixed(space, matrix_from(j.at("data"), space->dim(), space->dim()));
    throw std::invalid_argument("unknown bosonic state representation '" + rep + "'");
}

Json to_json(const ProductWitness& w) {
    Json j = Json::array();
    for (const VectorXd& f : w.factors()) j.push_back(vector_json(f));
    return j;
}

ProductWitness witness_from_json(const Json& j) {
    std::vector<VectorXd> factors;
    for (const Json& f : j) factors.push_back(vector_from(f));
    return ProductWitness(std::move(factors), 1e-9);
}

std::string to_string(InstanceKind k) {
    switch (k) {
        case InstanceKind::verifier: return "verifier";
        case InstanceKind::matrix: return "matrix";
        case InstanceKind::distribution: return "distribution";
        case InstanceKind::bosonic_state: return "bosonic-state";
    }
    return "?";
}

InstanceKind instance_kind_from_string(const std::string& s) {
    if (s == "verifier") return InstanceKind::verifier;
    if (s == "matrix") return InstanceKind::matrix;
    if (s == "distribution") return InstanceKind::distribution;
    if (s == "bosonic-state") return InstanceKind::bosonic_state;
    throw std::invalid_argument("unknown instance kind '" + s + "'");
}

namespace {

void require_kind(const InstanceFile& f, InstanceKind k) {
    if (f.kind != k)
        throw std::invalid_argument("instance is a " + to_string(f.kind) + ", expected a " + to_string(k));
}

}  // namespace

BranchOverlapVerifier InstanceFile::verifier() const {
    require_kind(*this, InstanceKind::verifier);
    return verifier_from_json(payload);
}

RealOperator InstanceFile::matrix() const {
    require_kind(*this, InstanceKind::matrix);
    return operator_from_json(payload.at("operator"));
}

JointDistribution InstanceFile::distribution() const {
    require_kind(*this, InstanceKind::distribution);
    return distribution_from_json(payload);
}

BosonicState InstanceFile::bosonic_state() const {
    require_kind(*this, InstanceKind::bosonic_state);
    return bosonic_state_from_json(payload);
}

std::optional<ProductWitness> InstanceFile::witness() const {
    if (kind != InstanceKind::matrix || !payload.contains("witness")) return std::nullopt;
    return witness_from_json(payload.at("witness"));
}

InstanceFile InstanceFile::of(const BranchOverlapVerifier& v, InstanceMetadata meta) {
    if (meta.dims.empty()) meta.dims = v.witness_layout().dims();
    return {kFormatVersion, InstanceKind::verifier, to_json(v), std::move(meta)};
}

InstanceFile InstanceFile::of(const RealOperator& m, InstanceMetadata meta) {
    if (meta.dims.empty()) meta.dims = m.layout.dims();
    return {kFormatVersion, InstanceKind::matrix, Json{{"operator", to_json(m)}}, std::move(meta)};
}

InstanceFile InstanceFile::of(const JointDistribution& p, InstanceMetadata meta) {
    if (meta.dims.empty()) meta.dims = p.layout().dims();
    return {kFormatVersion, InstanceKind::distribution, to_json(p), std::move(meta)};
}

InstanceFile InstanceFile::of(const BosonicState& s, InstanceMetadata meta) {
    if (meta.dims.empty()) meta.dims = s.space().base().dims();
    return {kFormatVersion, InstanceKind::bosonic_state, to_json(s), std::move(meta)};
}

Json to_json(const InstanceFile& f) {
    return {{"format_version", f.version},
            {"kind", to_string(f.kind)},
            {"payload", f.payload},
            {"metadata",
             {{"seed", f.metadata.seed},
              {"generator", f.metadata.generator},
              {"dims", f.metadata.dims},
              {"notes", f.metadata.notes},
              {"known", f.metadata.known}}}};
}

InstanceFile instance_from_json(const Json& j) {
    InstanceFile f;
    f.version = j.at("format_version").get<int>();
    if (f.version != kFormatVersion)
        throw std::invalid_argument("unsupported instance format version " + std::to_string(f.version));
    f.kind = instance_kind_from_string(j.at("kind").get<std::string>());
    f.payload = j.at("payload");
    if (j.contains("metadata")) {
        const Json& m = j.at("metadata");
        f.metadata.seed = param<std::uint64_t>(m, "seed", 0);
        f.metadata.generator = param<std::string>(m, "generator", "");
        f.metadata.dims = param<std::vector<std::size_t>>(m, "dims", {});
        f.metadata.notes = param<std::string>(m, "notes", "");
        f.metadata.known = param<std::map<std::string, double>>(m, "known", {});
    }
    return f;
}

std::vector<InstanceFile> read_instances(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path.string());
    const Json j = Json::parse(in);
    std::vector<InstanceFile> out;
    if (j.is_array()) {
        for (const Json& e : j) out.push_back(instance_from_json(e));
    } else {
        out.push_back(instance_from_json(j));
    }
    return out;
}

void write_json(const std::filesystem::path& path, const Json& j) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    out << j.dump(2) << '\n';
    if (!out) throw std::runtime_error("write failed for " + path.string());
}

RealOperator random_nonneg_psd(const RegisterLayout& layout, std::uint64_t seed, double scale, double density) {
    if (!(scale > 0.0 && scale <= 1.0)) throw std::invalid_argument("nonneg-psd: scale must be in (0,1]");
    if (!(density > 0.0 && density <= 1.0)) throw std::invalid_argument("nonneg-psd: density must be in (0,1]");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    MatrixXd b = MatrixXd::Zero(n, n);
    for (;;) {
        for (Eigen::Index r = 0; r < n; ++r)
            for (Eigen::Index c = 0; c < n; ++c) b(r, c) = unif(rng) < density ? unif(rng) : 0.0;
        if (b.squaredNorm() > 0.0) break;
    }
    MatrixXd m = b.transpose() * b;
    m = (m + m.transpose()).eval() / 2.0;
    m *= scale / spectral_norm(m);
    return RealOperator(layout, std::move(m));
}

RealOperator maximally_entangled_projector(std::size_t d) {
    if (d < 1) throw std::invalid_argument("maximally-entangled: d must be >= 1");
    const RegisterLayout layout{d, d};
    VectorXd phi = VectorXd::Zero(static_cast<Eigen::Index>(d * d));
    for (std::size_t i = 0; i < d; ++i) phi(static_cast<Eigen::Index>(i * d + i)) = 1.0 / std::sqrt(double(d));
    return RealOperator(layout, phi * phi.transpose());
}

namespace {

VectorXd random_nonneg_unit(std::size_t d, std::mt19937_64& rng) {
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    VectorXd x(static_cast<Eigen::Index>(d));
    for (Eigen::Index i = 0; i < x.size(); ++i) x(i) = unif(rng) + 1e-3;
    return x / x.norm();
}

InstanceFile gen_circuit(const Json& p, std::uint64_t seed) {
    const auto regs = param<std::vector<std::size_t>>(p, "register_bits", {1, 1});
    const auto zeros = param<std::size_t>(p, "zeros", 1);
    const auto pluses = param<std::size_t>(p, "pluses", 1);
    const auto gates = param<std::size_t>(p, "gates", 8);
    std::size_t n = zeros + pluses;
    for (std::size_t b : regs) {
        if (b == 0) throw std::invalid_argument("circuit: register widths must be >= 1");
        n += b;
    }
    if (n < 2) throw std::invalid_argument("circuit: need at least two bits");
    if (n > 16) throw std::invalid_argument("circuit: at most 16 bits");
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t hi) { return std::uniform_int_distribution<std::size_t>(0, hi - 1)(rng); };
    auto distinct = [&](std::size_t count) {
        std::vector<std::size_t> all(n);
        std::iota(all.begin(), all.end(), std::size_t{0});
        std::shuffle(all.begin(), all.end(), rng);
        all.resize(count);
        return all;
    };
    ReversibleCircuit c(n);
    for (std::size_t g = 0; g < gates; ++g) {
        const std::size_t kind = pick(n >= 3 ? 4 : 3);
        if (kind == 0) {
            c.add(gate::Not{pick(n)});
        } else if (kind == 1) {
            const auto b = distinct(2);
            c.add(gate::Cnot{b[0], b[1]});
        } else if (kind == 2) {
            const auto b = distinct(2);
            c.add(gate::Swap{b[0], b[1]});
        } else {
            const auto b = distinct(3);
            c.add(gate::Toffoli{b[0], b[1], b[2]});
        }
    }
    InstanceMetadata meta{seed, "circuit", {}, "random reversible circuit", {}};
    return InstanceFile::of(BranchOverlapVerifier(regs, AncillaSpec{zeros, pluses}, std::move(c)), std::move(meta));
}

InstanceFile gen_nonneg_psd(const Json& p, std::uint64_t seed) {
    const RegisterLayout layout(param<std::vector<std::size_t>>(p, "dims", {2, 2}));
    const RealOperator m =
        random_nonneg_psd(layout, seed, param<double>(p, "scale", 1.0), param<double>(p, "density", 0.6));
    return InstanceFile::of(m, InstanceMetadata{seed, "nonneg-psd", {}, "B^T B / ||B^T B|| * scale", {}});
}

InstanceFile gen_planted(const Json& p, std::uint64_t seed) {
    const RegisterLayout layout(param<std::vector<std::size_t>>(p, "dims", {2, 2}));
    const double w = param<double>(p, "w", 0.5);
    if (!(w >= 0.0 && w <= 1.0)) throw std::invalid_argument("planted: w must be in [0,1]");
    const RealOperator noise =
        random_nonneg_psd(layout, seed, param<double>(p, "scale", 1.0), param<double>(p, "density", 0.6));
    std::mt19937_64 rng(seed ^ 0x9e3779b97f4a7c15ULL);
    std::vector<VectorXd> factors;
    for (std::size_t d : layout.dims()) factors.push_back(random_nonneg_unit(d, rng));
    const ProductWitness u(factors);
    const VectorXd uk = u.kron();
    MatrixXd m = (1.0 - w) * noise.matrix + w * uk * uk.transpose();
    const RealOperator op(layout, std::move(m));
    InstanceFile f = InstanceFile::of(op, InstanceMetadata{seed, "planted", {}, "(1-w) N + w |u><u|", {}});
    f.payload["witness"] = to_json(u);
    f.metadata.known["witness_value"] = product_value(op, u);
    return f;
}

InstanceFile gen_entangled(const Json& p, std::uint64_t seed) {
    const auto d = param<std::size_t>(p, "d", 2);
    InstanceFile f = InstanceFile::of(maximally_entangled_projector(d),
                                      InstanceMetadata{seed, "maximally-entangled", {}, "|Phi><Phi|", {}});
    f.metadata.known["lambda_max"] = 1.0;
    f.metadata.known["product_value"] = 1.0 / static_cast<double>(d);
    return f;
}

InstanceFile gen_distribution(const Json& p, std::uint64_t seed) {
    const RegisterLayout layout(param<std::vector<std::size_t>>(p, "dims", {2, 2}));
    const double sparsity = param<double>(p, "sparsity", 0.2);
    if (!(sparsity >= 0.0 && sparsity < 1.0)) throw std::invalid_argument("distribution: sparsity must be in [0,1)");
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    VectorXd v(static_cast<Eigen::Index>(layout.total_dim()));
    do {
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = unif(rng) < sparsity ? 0.0 : unif(rng);
    } while (v.sum() <= 0.0);
    v /= v.sum();
    return InstanceFile::of(JointDistribution(layout, v), InstanceMetadata{seed, "distribution", {}, "", {}});
}

InstanceFile gen_bosonic(const Json& p, std::uint64_t seed) {
    const RegisterLayout base(param<std::vector<std::size_t>>(p, "dims", {2, 2}));
    auto copies = param<std::vector<std::size_t>>(p, "copies", std::vector<std::size_t>(base.size() - 1, 2));
    const auto rank = param<std::size_t>(p, "rank", 1);
    const bool nonneg = param<bool>(p, "nonneg", false);
    auto space = std::make_shared<const SeparatelySymmetricSpace>(base, std::move(copies));
    if (space->dim() > 4096) throw std::invalid_argument("bosonic-state: compressed dimension exceeds 4096");
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> gauss;
    auto draw = [&] {
        VectorXd v(static_cast<Eigen::Index>(space->dim()));
        for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = nonneg ? std::abs(gauss(rng)) : gauss(rng);
        return VectorXd(v / v.norm());
    };
    InstanceMetadata meta{seed, "bosonic-state", {}, "", {}};
    if (rank <= 1) return InstanceFile::of(BosonicState::pure(space, draw()), std::move(meta));
    std::uniform_real_distribution<double> unif(0.1, 1.0);
    MatrixXd rho = MatrixXd::Zero(static_cast<Eigen::Index>(space->dim()), static_cast<Eigen::Index>(space->dim()));
    double total = 0.0;
    for (std::size_t k = 0; k < rank; ++k) {
        const double w = unif(rng);
        const VectorXd v = draw();
        rho += w * v * v.transpose();
        total += w;
    }
    rho /= total;
    rho = (rho + rho.transpose()).eval() / 2.0;
    return InstanceFile::of(BosonicState::mixed(space, std::move(rho)), std::move(meta));
}

}  // namespace

std::vector<std::string> generator_names() {
    return {"circuit", "nonneg-psd", "planted", "maximally-entangled", "distribution", "bosonic-state"};
}

InstanceFile generate_instance(const std::string& generator, const Json& params, std::uint64_t seed) {
    const Json p = params.is_null() ? Json::object() : params;
    InstanceFile f;
    if (generator == "circuit") f = gen_circuit(p, seed);
    else if (generator == "nonneg-psd") f = gen_nonneg_psd(p, seed);
    else if (generator == "planted") f = gen_planted(p, seed);
    else if (generator == "maximally-entangled") f = gen_entangled(p, seed);
    else if (generator == "distribution") f = gen_distribution(p, seed);
    else if (generator == "bosonic-state") f = gen_bosonic(p, seed);
    else throw std::invalid_argument("unknown generator '" + generator + "'");
    f.metadata.seed = seed;
    return f;
}

CheckRecord check_le(std::string name, std::string anchor, double lhs, double rhs, double tol) {
    return {std::move(name), std::move(anchor), "<=", lhs, rhs, tol, lhs <= rhs + tol, Json::object()};
}

CheckRecord check_ge(std::string name, std::string anchor, double lhs, double rhs, double tol) {
    return {std::move(name), std::move(anchor), ">=", lhs, rhs, tol, lhs >= rhs - tol, Json::object()};
}

CheckRecord check_eq(std::string name, std::string anchor, double lhs, double rhs, double tol) {
    return {std::move(name), std::move(anchor), "==", lhs, rhs, tol, std::abs(lhs - rhs) <= tol, Json::object()};
}

CheckRecord check_true(std::string name, std::string anchor, bool ok) {
    return {std::move(name), std::move(anchor), "holds", ok ? 1.0 : 0.0, 1.0, 0.0, ok, Json::object()};
}

std::size_t Report::passed() const {
    return static_cast<std::size_t>(
        std::count_if(records.begin(), records.end(), [](const CheckRecord& r) { return r.passed; }));
}

void Report::finalize() {
    std::stable_sort(records.begin(), records.end(),
                     [](const CheckRecord& a, const CheckRecord& b) { return a.name < b.name; });
}

namespace {

/// JSON has no infinities; they are written as strings.
Json number(double x) {
    if (std::isfinite(x)) return x;
    if (std::isnan(x)) return "nan";
    return x > 0 ? "inf" : "-inf";
}

}  // namespace

Json to_json(const RoundingTrace& t) {
    Json steps = Json::array();
    for (const RoundingStep& s : t.steps)
        steps.push_back({{"block", s.block},
                         {"hellinger_gap", s.hellinger_gap},
                         {"outcome", s.outcome},
                         {"weight", s.weight},
                         {"tested_value", s.tested_value},
                         {"tested_entropy", s.tested_entropy},
                         {"potential", s.potential},
                         {"value_before", s.value_before},
                         {"averaged_value", s.averaged_value},
                         {"entropy_before", s.entropy_before},
                         {"averaged_entropy", s.averaged_entropy},
                         {"mutual_information", s.mutual_information},
                         {"potential_before", s.potential_before},
                         {"value_preserved", s.value_preserved},
                         {"hypothesis", s.hypothesis},
                         {"entropy_drop_holds", s.entropy_drop_holds},
                         {"potential_increase_holds", s.potential_increase_holds},
                         {"potential_nondecreasing", s.potential_nondecreasing}});
    return {{"steps", steps},
            {"stop_reason", t.stop_reason},
            {"terminal",
             {{"copies", t.terminal_copies},
              {"tested_value", t.terminal_value},
              {"gamma", t.terminal_gamma},
              {"witness", to_json(t.witness)}}}};
}

Json to_json(const AdaptiveRoundResult& r) {
    return {{"initial_value", r.initial_value},   {"achieved_value", r.achieved_value},
            {"certified_loss", r.certified_loss}, {"schedule_bound", r.schedule_bound},
            {"slack", r.slack},                   {"bound_holds", r.bound_holds},
            {"witness", to_json(r.witness)},      {"trace", to_json(r.trace)}};
}

Json to_json(const CollapsePlan& p) {
    Json j{{"k", p.k},
           {"base_dims", p.base_dims},
           {"c", p.c},
           {"s", p.s},
           {"delta_gap", p.delta_gap},
           {"epsilon", p.epsilon},
           {"B", p.B},
           {"R_theoretical", number(p.R_theoretical)},
           {"eta", p.eta},
           {"alpha", p.alpha},
           {"c_prime", p.c_prime},
           {"s_prime", p.s_prime},
           {"gap_prime", p.gap_prime},
           {"R_actual", p.R_actual}};
    if (p.eta_actual) j["eta_actual"] = *p.eta_actual;
    return j;
}

Json to_json(const GapAudit& a) {
    return {{"omega_lower", a.omega_lower},       {"omega_upper", a.omega_upper},
            {"lambda_exact", a.lambda_exact},     {"lambda_tilde", a.lambda_tilde},
            {"eigen_shift", a.eigen_shift},       {"perturbation_holds", a.perturbation_holds},
            {"yes_case_holds", a.yes_case_holds}, {"observed_slack", a.observed_slack},
            {"no_case_status", a.no_case_status}, {"witness_label", a.witness_label}};
}

Json to_json(const CheckRecord& r) {
    return {{"name", r.name},         {"anchor", r.anchor},  {"relation", r.relation},
            {"lhs", number(r.lhs)},   {"rhs", number(r.rhs)}, {"tolerance", r.tolerance},
            {"passed", r.passed},     {"measured", r.measured}};
}

Json to_json(const Report& r) {
    Json recs = Json::array();
    for (const CheckRecord& c : r.records) recs.push_back(to_json(c));
    return {{"suite", r.suite},
            {"config", r.config},
            {"records", recs},
            {"summary", {{"total", r.records.size()}, {"passed", r.passed()}, {"failed", r.failed()}}}};
}

}  // namespace stoqext
