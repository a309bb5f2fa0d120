// stoqext: command-line front end for the verification toolkit.
//
// Exit codes: 0 every check passed, 1 some check failed, 2 usage or I/O error.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "stoqext/collapse.hpp"
#include "stoqext/dyadic.hpp"
#include "stoqext/extension.hpp"
#include "stoqext/io.hpp"
#include "stoqext/rounding.hpp"
#include "stoqext/spectrum.hpp"
#include "stoqext/suite.hpp"

using namespace stoqext;

namespace {

struct Common {
    std::uint64_t seed = 1;
    double tol = 1e-9;
    std::size_t max_dim = 4096;
    std::size_t r_actual = 2;
    std::string out;
};

void emit(const Common& c, const Json& j) {
    if (c.out.empty() || c.out == "-") {
        std::cout << j.dump(2) << '\n';
    } else {
        write_json(c.out, j);
    }
}

InstanceFile single_instance(const std::string& path) {
    auto all = read_instances(path);
    if (all.size() != 1) throw std::invalid_argument(path + ": expected exactly one instance");
    return all.front();
}

int finish(const Common& c, Json result, const Report& rep) {
    result["report"] = to_json(rep);
    emit(c, result);
    std::fprintf(stderr, "%s: %zu/%zu checks passed\n", rep.suite.c_str(), rep.passed(), rep.records.size());
    return rep.ok() ? 0 : 1;
}

SuiteConfig suite_config(const Common& c) {
    SuiteConfig s;
    s.seed = c.seed;
    s.tol = c.tol;
    s.max_dim = c.max_dim;
    s.r_actual = c.r_actual;
    return s;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Stoquastic verification toolkit: overlaps, product values, extensions, rounding, collapse"};
    app.require_subcommand(1);
    app.fallthrough();
    Common common;
    app.add_option("--seed", common.seed, "Random seed")->capture_default_str();
    app.add_option("--tol", common.tol, "Check tolerance")->capture_default_str();
    app.add_option("--max-dim", common.max_dim, "Dimension cap for dense constructions")->capture_default_str();
    app.add_option("--r-actual", common.r_actual, "Copies used for collapse constructions")->capture_default_str();
    app.add_option("--out", common.out, "Output file (default stdout)");

    // gen
    auto* gen = app.add_subcommand("gen", "Generate seeded instances");
    std::string generator, params = "{}";
    std::size_t count = 1;
    gen->add_option("generator", generator, "Generator name")
        ->required()
        ->check(CLI::IsMember(generator_names()));
    gen->add_option("--params", params, "Generator parameters as a JSON object");
    gen->add_option("--count", count, "Number of instances (seeds seed, seed+1, ...)")->check(CLI::PositiveNumber);

    // compress
    auto* compress = app.add_subcommand("compress", "Raw, Hermitian and acceptance matrices of a verifier");
    std::string input;
    compress->add_option("instance", input, "Verifier instance file")->required()->check(CLI::ExistingFile);

    // value
    auto* value = app.add_subcommand("value", "Bounds on the nonnegative product value");
    std::size_t grid_points = 200;
    int restarts = 50;
    value->add_option("instance", input, "Matrix instance file")->required()->check(CLI::ExistingFile);
    value->add_option("--grid", grid_points, "Grid points per angle (oracle regime only)");
    value->add_option("--restarts", restarts, "Alternating maximizer restarts");

    // extend
    auto* extend = app.add_subcommand("extend", "Lambda_R sweep of the separately symmetric extension");
    std::size_t max_copies = 4;
    extend->add_option("instance", input, "Matrix instance file")->required()->check(CLI::ExistingFile);
    extend->add_option("--max-copies", max_copies, "Largest R")->check(CLI::PositiveNumber);

    // round
    auto* round = app.add_subcommand("round", "Adaptive rounding with a per-step trace");
    std::size_t copies = 3;
    double epsilon = 0.5;
    std::string state_path;
    round->add_option("instance", input, "Matrix instance file")->required()->check(CLI::ExistingFile);
    round->add_option("--copies", copies, "R for the top eigenvector of the extension")->check(CLI::PositiveNumber);
    round->add_option("--epsilon", epsilon, "Rounding accuracy")->check(CLI::Range(1e-6, 1.0));
    round->add_option("--state", state_path, "Round this bosonic-state instance instead of the top eigenvector")
        ->check(CLI::ExistingFile);

    // symmetrizer
    auto* sym = app.add_subcommand("symmetrizer", "Dyadic permutation sampler and its projector");
    double eta = 0.25;
    std::size_t local_dim = 2;
    sym->add_option("--copies", copies, "R")->check(CLI::Range(1, 12));
    sym->add_option("--eta", eta, "Target accuracy in (0,1)");
    sym->add_option("--local-dim", local_dim, "Local dimension for the projector check")->check(CLI::PositiveNumber);

    // collapse
    auto* collapse = app.add_subcommand("collapse", "Collapse plan, compiled extension and gap audit");
    double c = 0.7, s = 0.5;
    std::optional<double> eta_override;
    collapse->add_option("instance", input, "Matrix or verifier instance file")->required()->check(CLI::ExistingFile);
    collapse->add_option("--c", c, "Completeness");
    collapse->add_option("--s", s, "Soundness");
    collapse->add_option("--eta", eta_override, "Sampler accuracy override");

    // suite
    auto* suite = app.add_subcommand("suite", "Run an invariant suite over instance files");
    std::string suite_name;
    std::vector<std::string> files;
    suite->add_option("name", suite_name, "Suite name")->required()->check(CLI::IsMember(suite_names()));
    suite->add_option("instances", files, "Instance files")->check(CLI::ExistingFile);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*gen) {
            const Json p = Json::parse(params);
            if (!p.is_object()) throw std::invalid_argument("--params must be a JSON object");
            if (count == 1) {
                emit(common, to_json(generate_instance(generator, p, common.seed)));
            } else {
                Json arr = Json::array();
                for (std::size_t k = 0; k < count; ++k) arr.push_back(to_json(generate_instance(generator, p, common.seed + k)));
                emit(common, arr);
            }
            return 0;
        }
        if (*compress) {
            const InstanceFile f = single_instance(input);
            const BranchOverlapVerifier v = f.verifier();
            Json result{{"raw_overlap", to_json(raw_overlap(v))},
                        {"hermitian_overlap", to_json(hermitian_overlap(v))},
                        {"acceptance_matrix", to_json(acceptance_matrix(v))}};
            return finish(common, std::move(result), run_suite("branch-overlap", {f}, suite_config(common)));
        }
        if (*value) {
            const InstanceFile f = single_instance(input);
            const RealOperator m = f.matrix();
            AlternatingOptions opt;
            opt.restarts = restarts;
            opt.seed = common.seed;
            const AlternatingResult alt = omega_plus_alternating(m, opt);
            Json result{{"omega_lower", alt.value},
                        {"witness", to_json(alt.witness)},
                        {"lambda_max", lambda_max(m.matrix)}};
            if (m.layout.size() <= 3) {
                bool grid = true;
                for (std::size_t d : m.layout.dims()) grid = grid && d <= 3;
                if (grid) {
                    result["grid_value"] = omega_plus_grid(m, grid_points);
                    result["grid_tolerance"] = grid_tolerance(m, grid_points);
                }
            }
            SuiteConfig cfg = suite_config(common);
            cfg.grid_points = grid_points;
            return finish(common, std::move(result), run_suite("product-value", {f}, cfg));
        }
        if (*extend) {
            const InstanceFile f = single_instance(input);
            const RealOperator m = f.matrix();
            Json sweep = Json::array();
            for (std::size_t r = 1; r <= max_copies; ++r) {
                const SeparatelySymmetricSpace space(m.layout, std::vector<std::size_t>(m.layout.size() - 1, r));
                if (space.dim() > common.max_dim) break;
                sweep.push_back({{"R", r},
                                 {"compressed_dim", space.dim()},
                                 {"Lambda_R", extension_lambda_max(m, r, ExtensionOptions{common.max_dim, {}})}});
            }
            SuiteConfig cfg = suite_config(common);
            cfg.max_copies = max_copies;
            return finish(common, Json{{"sweep", sweep}}, run_suite("sandwich", {f}, cfg));
        }
        if (*round) {
            const InstanceFile f = single_instance(input);
            const RealOperator m = f.matrix();
            std::optional<BosonicState> rho;
            if (!state_path.empty()) {
                rho = single_instance(state_path).bosonic_state();
            } else {
                auto space = std::make_shared<const SeparatelySymmetricSpace>(
                    m.layout, std::vector<std::size_t>(m.layout.size() - 1, copies));
                if (space->dim() > common.max_dim) throw std::length_error("compressed dimension exceeds --max-dim");
                const EigenPair top = top_eigenpair(
                    extension_operator_compressed(m, copies, ExtensionOptions{common.max_dim, {}}).matrix);
                rho = BosonicState::pure(space, top.vector / top.vector.norm());
            }
            const RoundingSchedule sched = RoundingSchedule::from_epsilon(epsilon, m.layout);
            const AdaptiveRoundResult res = adaptive_round(*rho, m, sched);
            Report rep;
            rep.suite = "round";
            rep.config = {{"epsilon", epsilon}, {"delta", sched.delta}, {"mu", sched.mu}, {"L", sched.L}, {"T", sched.T}};
            rep.add(check_true("steps-hold", "every per-step inequality holds", res.trace.all_steps_hold()));
            rep.add(check_ge("recovered", "<x, M x> >= V(rho) - (2 sqrt(2)(m-1) delta + mu L + slack)", res.achieved_value,
                             res.initial_value - res.schedule_bound - res.slack, common.tol));
            rep.finalize();
            return finish(common, Json{{"result", to_json(res)}}, rep);
        }
        if (*sym) {
            const DyadicPermutationSampler smp(copies, eta);
            Json result{{"R", smp.copies()},       {"eta", smp.eta()},  {"q", smp.q()},
                        {"N", smp.N()},            {"Q", smp.Q()},      {"L_count", smp.L_count()},
                        {"b", smp.b()},            {"total_variation", smp.total_variation().str()},
                        {"closed_form_q", smp.closed_form_q()}};
            Report rep;
            rep.suite = "symmetrizer";
            const Rational tv = smp.total_variation();
            CheckRecord r = check_true("total-variation", "sum |p - 1/N| <= eta exactly", tv <= Rational(eta));
            r.lhs = tv.convert_to<double>();
            r.rhs = eta;
            rep.add(std::move(r));
            if (std::pow(double(local_dim), double(copies)) <= double(common.max_dim)) {
                const RealOperator pt = approx_projector(smp, local_dim, common.max_dim);
                const RealOperator pe = sym_projector(local_dim, copies, common.max_dim);
                const double dev = spectral_norm(MatrixXd(pt.matrix - pe.matrix));
                result["projector_deviation"] = dev;
                rep.add(check_le("close-to-projector", "||Pi~ - Pi|| <= eta", dev, eta, common.tol));
                rep.add(check_le("contraction", "||Pi~|| <= 1", spectral_norm(pt.matrix), 1.0, 1e-12));
            }
            rep.finalize();
            return finish(common, std::move(result), rep);
        }
        if (*collapse) {
            const InstanceFile f = single_instance(input);
            const bool is_verifier = f.kind == InstanceKind::verifier;
            const RealOperator m = is_verifier ? acceptance_matrix(f.verifier()) : f.matrix();
            const CollapsePlan p = plan(m.layout.size(), m.layout.dims(), c, s, common.r_actual, eta_override);
            const CompiledExtensionVerifier cm = compile_matrices(m, p, common.max_dim);
            Json result{{"plan", to_json(p)}, {"perturbation", cm.perturbation}};
            SuiteConfig cfg = suite_config(common);
            cfg.c = c;
            cfg.s = s;
            cfg.eta = p.construction_eta();
            Report rep = run_suite("collapse", {f}, cfg);
            if (m.layout.size() <= 3) result["audit"] = to_json(gap_audit(m, p, cm));
            return finish(common, std::move(result), rep);
        }
        if (*suite) {
            std::vector<InstanceFile> all;
            for (const std::string& file : files) {
                auto more = read_instances(file);
                all.insert(all.end(), more.begin(), more.end());
            }
            return finish(common, Json::object(), run_suite(suite_name, all, suite_config(common)));
        }
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
    return 2;
}
