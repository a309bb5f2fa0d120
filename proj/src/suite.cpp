#include "stoqext/suite.hpp"

#include <cmath>
#include <cstdio>
#include <map>
#include <random>
#include <stdexcept>

#include "stoqext/collapse.hpp"
#include "stoqext/dyadic.hpp"
#include "stoqext/extension.hpp"
#include "stoqext/rounding.hpp"
#include "stoqext/spectrum.hpp"

namespace stoqext {

namespace {

const double kSqrt2 = std::sqrt(2.0);

std::string label(std::size_t idx, const std::string& check) {
    char buf[16];
    std::snprintf(buf, sizeof buf, "i%04zu.", idx);
    return buf + check;
}

std::uint64_t sub_seed(const SuiteConfig& cfg, std::size_t idx) { return cfg.seed * 1000003ULL + idx; }

void require(const InstanceFile& f, InstanceKind k, const std::string& suite) {
    if (f.kind != k)
        throw std::invalid_argument("suite " + suite + " expects " + to_string(k) + " instances, got " +
                                    to_string(f.kind));
}

VectorXd random_unit(std::size_t n, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g;
    VectorXd v(static_cast<Eigen::Index>(n));
    for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = g(rng);
    return v / v.norm();
}

bool in_grid_regime(const RegisterLayout& l) {
    if (l.size() > 3) return false;
    for (std::size_t d : l.dims())
        if (d > 3) return false;
    return true;
}

void branch_overlap(Report& rep, const std::vector<InstanceFile>& in, const SuiteConfig& cfg) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        require(in[i], InstanceKind::verifier, rep.suite);
        const BranchOverlapVerifier v = in[i].verifier();
        const RealOperator g = raw_overlap(v);
        const RealOperator h = hermitian_overlap(v);
        const RealOperator m = acceptance_matrix(v);
        rep.add(check_ge(label(i, "g-nonneg"), "G >= 0 entrywise", g.matrix.minCoeff(), 0.0, 0.0));
        rep.add(check_ge(label(i, "h-nonneg"), "H >= 0 entrywise", h.matrix.minCoeff(), 0.0, 0.0));
        rep.add(check_le(label(i, "h-symmetric"), "H = H^T", (h.matrix - h.matrix.transpose()).cwiseAbs().maxCoeff(),
                         0.0, 0.0));
        rep.add(check_le(label(i, "h-norm"), "||H|| <= 1", spectral_norm(h.matrix), 1.0, cfg.tol));
        rep.add(check_true(label(i, "accept-interval"), "0 <= (I+H)/2 <= I", psd_interval_check(m.matrix, cfg.tol)));
        const VectorXd psi = random_unit(m.dim(), sub_seed(cfg, i));
        rep.add(check_eq(label(i, "standard-model"), "Hadamard-test acceptance = (1 + <psi,H psi>)/2",
                         simulate_standard_model(v, psi), acceptance_probability(v, psi), cfg.tol));
    }
}

void acceptance_overlap(Report& rep, const std::vector<InstanceFile>& in, const SuiteConfig&) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        require(in[i], InstanceKind::verifier, rep.suite);
        const BranchOverlapVerifier v = in[i].verifier();
        const RealOperator lifted = hermitian_overlap(acceptance_as_overlap(v));
        const RealOperator m = acceptance_matrix(v);
        rep.add(check_le(label(i, "overlap-equals-acceptance"), "H(acceptance-as-overlap(v)) = (I + H(v))/2",
                         (lifted.matrix - m.matrix).cwiseAbs().maxCoeff(), 0.0, 1e-12));
    }
}

void product_value_suite(Report& rep, const std::vector<InstanceFile>& in, const SuiteConfig& cfg) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        require(in[i], InstanceKind::matrix, rep.suite);
        const RealOperator m = in[i].matrix();
        const AlternatingResult alt = omega_plus_alternating(m);
        const double lam = lambda_max(m.matrix);
        CheckRecord r = check_le(label(i, "omega-below-lambda"), "omega_+ <= lambda_max(M)", alt.value, lam, cfg.tol);
        r.measured["omega_alternating"] = alt.value;
        rep.add(std::move(r));
        const auto& known = in[i].metadata.known;
        if (auto it = known.find("product_value"); it != known.end())
            rep.add(check_eq(label(i, "omega-known"), "omega_+ = known value", alt.value, it->second, 1e-6));
        if (auto it = known.find("lambda_max"); it != known.end())
            rep.add(check_eq(label(i, "lambda-known"), "lambda_max(M) = known value", lam, it->second, cfg.tol));
        if (auto w = in[i].witness())
            rep.add(check_le(label(i, "witness-below-omega"), "<u, M u> <= omega_+ (best found)", product_value(m, *w),
                             alt.value, cfg.tol));
        if (in_grid_regime(m.layout) && m.layout.size() <= 2) {
            const double g = omega_plus_grid(m, cfg.grid_points);
            rep.add(check_eq(label(i, "grid-agrees"), "|grid - alternating| <= 4 m pi / g", g, alt.value,
                             grid_tolerance(m, cfg.grid_points)));
        }
    }
}

void sandwich(Report& rep, const std::vector<InstanceFile>& in, const SuiteConfig& cfg) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        require(in[i], InstanceKind::matrix, rep.suite);
        const RealOperator m = in[i].matrix();
        double omega = omega_plus_alternating(m).value;
        if (auto w = in[i].witness()) omega = std::max(omega, product_value(m, *w));
        std::optional<double> prev;
        for (std::size_t r = 1; r <= cfg.max_copies; ++r) {
            const SeparatelySymmetricSpace space(m.layout, std::vector<std::size_t>(m.layout.size() - 1, r));
            if (space.dim() > cfg.max_dim) break;
            const double lam = extension_lambda_max(m, r, ExtensionOptions{cfg.max_dim, {}});
            const std::string rs = "R" + std::to_string(r);
            CheckRecord lift = check_le(label(i, rs + ".lift"), "omega_+ <= Lambda_R", omega, lam, cfg.tol);
            lift.measured["copies"] = r;
            rep.add(std::move(lift));
            if (r == 1)
                rep.add(check_eq(label(i, "R1.equals-lambda-max"), "Lambda_1 = lambda_max(M)", lam,
                                 lambda_max(m.matrix), cfg.tol));
            if (prev) rep.add(check_le(label(i, rs + ".monotone"), "Lambda_R <= Lambda_{R-1}", lam, *prev, cfg.tol));
            prev = lam;
        }
    }
}

RealOperator suite_operator(const BosonicState& s, std::uint64_t seed) {
    return random_nonneg_psd(s.space().base(), seed);
}

void direct_rounding(Report& rep, const std::vector<InstanceFile>& in, const SuiteConfig& cfg) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        require(in[i], InstanceKind::bosonic_state, rep.suite);
        const BosonicState s = in[i].bosonic_state();
        const RealOperator m = suite_operator(s, sub_seed(cfg, i));
        const DirectRoundResult d = direct_round(s, m);
        CheckRecord r = check_ge(label(i, "direct-round"), "<z, M z> >= V(rho) - 2 sqrt(2) gamma", d.achieved_value,
                                 d.tested_value - 2.0 * kSqrt2 * d.gamma, cfg.tol);
        r.measured["gamma"] = d.gamma;
        r.measured["tested_value"] = d.tested_value;
        rep.add(std::move(r));
    }
}

void conditioning(Report& rep, const std::vector<InstanceFile>& in, const SuiteConfig& cfg) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        require(in[i], InstanceKind::bosonic_state, rep.suite);
        const BosonicState s = in[i].bosonic_state();
        const RealOperator m = suite_operator(s, sub_seed(cfg, i));
        const JointDistribution p = measured_distribution(s);
        const double v = tested_value(s, m);
        const double h = entropy(p);
        for (std::size_t b = 0; b < s.space().blocks(); ++b) {
            if (s.space().copies()[b] < 2) continue;
            const std::string bs = "block" + std::to_string(b) + ".";
            const auto outs = condition_step(s, b);
            double wsum = 0.0, vavg = 0.0, havg = 0.0, support = 0.0;
            const bool full_ok = outs.empty() || outs.front().residual.space().full_layout().total_dim() <= cfg.max_dim;
            for (const auto& o : outs) {
                wsum += o.weight;
                vavg += o.weight * tested_value(o.residual, m);
                havg += o.weight * tested_entropy(o.residual);
                if (full_ok) {
                    const double sv = o.residual.is_pure()
                                          ? support_violation(o.residual.space(), o.residual.full_vector())
                                          : support_violation(o.residual.space(), o.residual.full_density());
                    support = std::max(support, sv);
                }
            }
            rep.add(check_eq(label(i, bs + "weights"), "sum_a w_a = 1", wsum, 1.0, cfg.tol));
            rep.add(check_eq(label(i, bs + "value-preserved"), "sum_a w_a V(rho^a) = V(rho)", vavg, v, cfg.tol));
            if (full_ok)
                rep.add(check_le(label(i, bs + "residual-support"), "||(I-P) rho^a (I-P)||_tr <= 1e-9", support, 0.0,
                                 1e-9));
            const double gap = hellinger_to_split(p, b);
            CheckRecord drop = check_ge(label(i, bs + "entropy-drop"), "H(rho) - sum_a w_a H(rho^a) >= 2 d_H^2",
                                        h - havg, 2.0 * gap * gap, cfg.tol);
            drop.measured["hellinger_gap"] = gap;
            rep.add(std::move(drop));
        }
    }
}

void distances_suite(Report& rep, const std::vector<InstanceFile>& in, const SuiteConfig&) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        require(in[i], InstanceKind::distribution, rep.suite);
        const JointDistribution p = in[i].distribution();
        const JointDistribution q = product_of_marginals(p);
        const HellingerKlReport hk = check_hellinger_kl(p, q);
        rep.add(check_ge(label(i, "kl-vs-hellinger"), "D(P||Q) >= 2 d_H(P,Q)^2", hk.kl, 2.0 * hk.hellinger * hk.hellinger,
                         1e-12));
        if (p.coordinates() >= 2) {
            double delta = 0.0;
            for (std::size_t c = 0; c + 1 < p.coordinates(); ++c) delta = std::max(delta, hellinger_to_split(p, c));
            const TensorizationReport t = check_tensorization(p, delta);
            rep.add(check_le(label(i, "tensorization"), "d_H(P, prod p_i) <= (m-1) delta", t.global,
                             static_cast<double>(p.coordinates() - 1) * delta, 1e-12));
        }
    }
}

void symmetrizer(Report& rep, const SuiteConfig& cfg) {
    for (std::size_t r = 1; r <= 4; ++r)
        for (double eta : {0.5, 0.25, 0.1}) {
            const DyadicPermutationSampler s(r, eta);
            char tag[48];
            std::snprintf(tag, sizeof tag, "R%zu.eta%.2f.", r, eta);
            const std::string t = tag;
            bool inverse = true;
            Rational total = 0;
            for (const auto& [tau, p] : s.distribution()) {
                inverse = inverse && p == s.probability(tau.inverse());
                total += p;
            }
            rep.add(check_true(t + "inverse-invariant", "p(tau) = p(tau^-1) exactly", inverse));
            rep.add(check_true(t + "normalized", "sum p = 1 exactly", total == 1));
            const Rational tv = s.total_variation();
            CheckRecord tvr = check_true(t + "total-variation", "sum |p - 1/N| <= eta exactly", tv <= Rational(eta));
            tvr.lhs = tv.convert_to<double>();
            tvr.rhs = eta;
            rep.add(std::move(tvr));
            const bool minimal = 2.0 * double(s.N()) <= std::ldexp(eta, int(s.q())) &&
                                 (s.q() == 0 || 2.0 * double(s.N()) > std::ldexp(eta, int(s.q()) - 1));
            rep.add(check_true(t + "q-minimal", "q minimal with 2N/2^q <= eta", minimal));
            rep.add(check_eq(t + "q-closed-form", "q = ceil(log2(2N/eta))", s.q(), s.closed_form_q(), 0.0));
            for (std::size_t d : {2, 3}) {
                if (std::pow(double(d), double(r)) > double(std::min<std::size_t>(cfg.max_dim, 81))) continue;
                const RealOperator pt = approx_projector(s, d);
                const RealOperator pe = sym_projector(d, r);
                const std::string ds = t + "d" + std::to_string(d) + ".";
                rep.add(check_le(ds + "self-adjoint", "Pi~ = Pi~^T",
                                 (pt.matrix - pt.matrix.transpose()).cwiseAbs().maxCoeff(), 0.0, 1e-14));
                rep.add(check_ge(ds + "nonneg", "Pi~ >= 0 entrywise", pt.matrix.minCoeff(), 0.0, 0.0));
                rep.add(check_le(ds + "contraction", "||Pi~|| <= 1", spectral_norm(pt.matrix), 1.0, 1e-12));
                rep.add(check_le(ds + "close-to-projector", "||Pi~ - Pi|| <= eta",
                                 spectral_norm(MatrixXd(pt.matrix - pe.matrix)), eta, cfg.tol));
            }
        }
}

void collapse_suite(Report& rep, const std::vector<InstanceFile>& in, const SuiteConfig& cfg) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        const bool is_verifier = in[i].kind == InstanceKind::verifier;
        if (!is_verifier) require(in[i], InstanceKind::matrix, rep.suite);
        const RealOperator m = is_verifier ? acceptance_matrix(in[i].verifier()) : in[i].matrix();
        const CollapsePlan p = plan(m.layout.size(), m.layout.dims(), cfg.c, cfg.s, cfg.r_actual, cfg.eta);
        const CompiledExtensionVerifier cm = compile_matrices(m, p, cfg.max_dim);
        if (is_verifier) {
            const RealOperator hc = hermitian_overlap(compile_circuit(in[i].verifier(), p));
            rep.add(check_le(label(i, "circuit-equals-matrices"), "H(compiled circuit) = E~",
                             (hc.matrix - cm.tilde_E.matrix).cwiseAbs().maxCoeff(), 0.0, cfg.tol));
        }
        rep.add(check_le(label(i, "perturbation"), "||E~ - E|| <= 2 (k-1) eta", cm.perturbation, p.construction_alpha(),
                         cfg.tol));
        rep.add(check_true(label(i, "interval"), "0 <= E~ <= I", psd_interval_check(cm.tilde_E.matrix, cfg.tol)));
        const auto n = cm.tilde_E.dim();
        rep.add(check_le(label(i, "acceptance-form"), "C~ = (I + E~)/2",
                         (cm.tilde_C.matrix - (MatrixXd::Identity(n, n) + cm.tilde_E.matrix) / 2.0).cwiseAbs().maxCoeff(),
                         0.0, 1e-12));
        if (m.layout.size() <= 3) {
            const GapAudit a = gap_audit(m, p, cm);
            rep.add(check_le(label(i, "eigen-shift"), "|lambda(E~) - lambda(E)| <= 2 (k-1) eta", a.eigen_shift,
                             p.construction_alpha(), cfg.tol));
            CheckRecord yes = check_ge(label(i, "yes-case"), "lambda(E~) >= omega_+ - 2 (k-1) eta", a.lambda_tilde,
                                       a.omega_lower - p.construction_alpha(), cfg.tol);
            yes.measured["witness"] = a.witness_label;
            yes.measured["no_case"] = a.no_case_status;
            yes.measured["observed_slack"] = a.observed_slack;
            rep.add(std::move(yes));
        }
    }
}

void plan_arithmetic(Report& rep, const SuiteConfig& cfg) {
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> unif(0.0, 1.0);
    for (int t = 0; t < 20; ++t) {
        const std::size_t k = 2 + static_cast<std::size_t>(unif(rng) * 4.0);
        double c = unif(rng), s = unif(rng);
        if (c < s) std::swap(c, s);
        if (c - s < 1e-3) c = std::min(1.0, s + 0.1);
        const CollapsePlan p = plan(k, std::vector<std::size_t>(k, 2), c, s, 1);
        char tag[16];
        std::snprintf(tag, sizeof tag, "t%02d.", t);
        rep.add(check_eq(std::string(tag) + "gap-identity", "c' - s' = 11 Delta / 32", p.c_prime - p.s_prime,
                         p.gap_prime, 1e-14));
        rep.add(check_eq(std::string(tag) + "alpha", "alpha = Delta / 32", p.alpha, p.delta_gap / 32.0, 1e-15));
    }
    const CollapsePlan w = plan(2, {2, 2}, 0.7, 0.5, 1);
    rep.add(check_eq("worked.epsilon", "epsilon = Delta/4", w.epsilon, 0.05, 1e-14));
    rep.add(check_eq("worked.eta", "eta = Delta/(64(k-1))", w.eta, 0.003125, 1e-14));
    rep.add(check_eq("worked.alpha", "alpha = 2(k-1) eta", w.alpha, 0.00625, 1e-14));
    rep.add(check_eq("worked.gap-prime", "gap' = 11 Delta / 32", w.gap_prime, 0.06875, 1e-14));
    rep.add(check_eq("worked.R-theoretical", "R = 1 + ceil(128 B (k-1)^2 / epsilon^3)", w.R_theoretical,
                     1.0 + std::ceil(128.0 * 2.0 * std::log(2.0) / (0.05 * 0.05 * 0.05)), 0.0));
}

void adaptive_rounding(Report& rep, const std::vector<InstanceFile>& in, const SuiteConfig& cfg) {
    for (std::size_t i = 0; i < in.size(); ++i) {
        require(in[i], InstanceKind::matrix, rep.suite);
        const RealOperator m = in[i].matrix();
        const RoundingSchedule sched = RoundingSchedule::from_epsilon(cfg.epsilon, m.layout);
        for (std::size_t r = 3; r <= std::max<std::size_t>(3, cfg.max_copies); ++r) {
            auto space = std::make_shared<const SeparatelySymmetricSpace>(
                m.layout, std::vector<std::size_t>(m.layout.size() - 1, r));
            if (space->dim() > cfg.max_dim) break;
            const RealOperator e = extension_operator_compressed(m, r, ExtensionOptions{cfg.max_dim, {}});
            const EigenPair top = top_eigenpair(e.matrix);
            const BosonicState rho = BosonicState::pure(space, top.vector / top.vector.norm());
            const AdaptiveRoundResult res = adaptive_round(rho, m, sched);
            const std::string rs = "R" + std::to_string(r) + ".";
            rep.add(check_eq(label(i, rs + "tested-value"), "V(top eigenvector) = Lambda_R", res.initial_value,
                             top.value, cfg.tol));
            rep.add(check_true(label(i, rs + "witness-feasible"), "witness nonnegative with unit factors",
                               res.witness.matches(m.layout)));
            CheckRecord steps = check_true(label(i, rs + "steps-hold"), "every per-step inequality holds",
                                           res.trace.all_steps_hold());
            steps.measured["steps"] = res.trace.steps.size();
            steps.measured["stop_reason"] = res.trace.stop_reason;
            rep.add(std::move(steps));
            CheckRecord b = check_ge(label(i, rs + "recovered"), "<x, M x> >= V(rho) - (2 sqrt(2)(m-1) delta + mu L + slack)",
                                     res.achieved_value, res.initial_value - res.schedule_bound - res.slack, cfg.tol);
            b.measured["slack"] = res.slack;
            b.measured["certified_loss"] = res.certified_loss;
            rep.add(std::move(b));
        }
    }
}

}  // namespace

Json to_json(const SuiteConfig& c) {
    return {{"seed", c.seed},       {"tol", c.tol},         {"max_dim", c.max_dim},
            {"max_copies", c.max_copies}, {"r_actual", c.r_actual}, {"eta", c.eta},
            {"c", c.c},             {"s", c.s},             {"epsilon", c.epsilon},
            {"grid_points", c.grid_points}};
}

std::vector<std::string> suite_names() {
    return {"branch-overlap", "acceptance-overlap", "product-value", "sandwich",     "direct-rounding",
            "conditioning",   "distances",          "symmetrizer",   "collapse",     "plan-arithmetic",
            "adaptive-rounding"};
}

Report run_suite(const std::string& suite, const std::vector<InstanceFile>& instances, const SuiteConfig& config) {
    Report rep;
    rep.suite = suite;
    rep.config = to_json(config);
    if (suite == "branch-overlap") branch_overlap(rep, instances, config);
    else if (suite == "acceptance-overlap") acceptance_overlap(rep, instances, config);
    else if (suite == "product-value") product_value_suite(rep, instances, config);
    else if (suite == "sandwich") sandwich(rep, instances, config);
    else if (suite == "direct-rounding") direct_rounding(rep, instances, config);
    else if (suite == "conditioning") conditioning(rep, instances, config);
    else if (suite == "distances") distances_suite(rep, instances, config);
    else if (suite == "symmetrizer") symmetrizer(rep, config);
    else if (suite == "collapse") collapse_suite(rep, instances, config);
    else if (suite == "plan-arithmetic") plan_arithmetic(rep, config);
    else if (suite == "adaptive-rounding") adaptive_rounding(rep, instances, config);
    else throw std::invalid_argument("unknown suite '" + suite + "'");
    rep.finalize();
    return rep;
}

}  // namespace stoqext
