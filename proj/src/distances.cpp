#include "stoqext/distances.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>

namespace stoqext {

JointDistribution::JointDistribution(RegisterLayout layout, VectorXd probs, double sum_tol)
    : layout_(std::move(layout)), probs_(std::move(probs)) {
    if (static_cast<std::size_t>(probs_.size()) != layout_.total_dim())
        throw std::invalid_argument("JointDistribution: probability count does not match alphabet");
    if (probs_.size() > 0 && probs_.minCoeff() < 0)
        throw std::invalid_argument("JointDistribution: negative probability");
    if (std::abs(probs_.sum() - 1.0) > sum_tol)
        throw std::invalid_argument("JointDistribution: probabilities do not sum to 1");
}

JointDistribution JointDistribution::point_mass(const RegisterLayout& layout, std::size_t index) {
    VectorXd p = VectorXd::Zero(static_cast<Eigen::Index>(layout.total_dim()));
    p(static_cast<Eigen::Index>(index)) = 1.0;
    return {layout, std::move(p)};
}

JointDistribution JointDistribution::uniform(const RegisterLayout& layout) {
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    return {layout, VectorXd::Constant(n, 1.0 / static_cast<double>(n))};
}

JointDistribution marginal(const JointDistribution& p, const std::vector<std::size_t>& coords) {
    if (coords.empty()) throw std::invalid_argument("marginal: empty coordinate set");
    const RegisterLayout& full = p.layout();
    std::vector<std::size_t> dims;
    for (std::size_t c : coords) {
        if (c >= full.size()) throw std::invalid_argument("marginal: coordinate out of range");
        dims.push_back(full.dim(c));
    }
    const RegisterLayout sub(dims);
    VectorXd out = VectorXd::Zero(static_cast<Eigen::Index>(sub.total_dim()));
    BasisIndex sd(coords.size());
    for (std::size_t x = 0; x < full.total_dim(); ++x) {
        const BasisIndex d = full.decode(x);
        for (std::size_t k = 0; k < coords.size(); ++k) sd[k] = d[coords[k]];
        out(static_cast<Eigen::Index>(sub.encode(sd))) += p[x];
    }
    return {sub, std::move(out)};
}

JointDistribution product(const JointDistribution& a, const JointDistribution& b) {
    return {a.layout().concat(b.layout()), tensor(a.probs(), b.probs())};
}

JointDistribution product_of_marginals(const JointDistribution& p) {
    VectorXd acc = VectorXd::Ones(1);
    for (std::size_t i = 0; i < p.coordinates(); ++i) acc = tensor<double>(acc, marginal(p, {i}).probs());
    return {p.layout(), std::move(acc)};
}

static void require_same_alphabet(const JointDistribution& p, const JointDistribution& q,
                                  const char* who) {
    if (!(p.layout() == q.layout()))
        throw std::invalid_argument(std::string(who) + ": alphabet mismatch");
}

double hellinger_affinity(const JointDistribution& p, const JointDistribution& q) {
    require_same_alphabet(p, q, "hellinger");
    return (p.probs().cwiseProduct(q.probs())).cwiseSqrt().sum();
}

double hellinger(const JointDistribution& p, const JointDistribution& q) {
    const double sq = 1.0 - hellinger_affinity(p, q);
    return std::sqrt(std::clamp(sq, 0.0, 1.0));
}

double kl(const JointDistribution& p, const JointDistribution& q) {
    require_same_alphabet(p, q, "kl");
    double total = 0.0;
    for (Eigen::Index x = 0; x < p.probs().size(); ++x) {
        const double px = p.probs()(x), qx = q.probs()(x);
        if (px <= kSupportFloor) continue;
        if (qx <= kSupportFloor) return std::numeric_limits<double>::infinity();
        total += px * std::log(px / qx);
    }
    return std::max(total, 0.0);
}

double entropy(const JointDistribution& p) {
    double h = 0.0;
    for (Eigen::Index x = 0; x < p.probs().size(); ++x) {
        const double px = p.probs()(x);
        if (px > kSupportFloor) h -= px * std::log(px);
    }
    return h;
}

double mutual_information(const JointDistribution& p, const std::vector<std::size_t>& coords_a,
                          const std::vector<std::size_t>& coords_b) {
    std::vector<bool> seen(p.coordinates(), false);
    for (const auto* set : {&coords_a, &coords_b})
        for (std::size_t c : *set) {
            if (c >= p.coordinates() || seen[c])
                throw std::invalid_argument("mutual_information: coordinate sets must be disjoint");
            seen[c] = true;
        }
    if (std::find(seen.begin(), seen.end(), false) != seen.end() || coords_a.empty() || coords_b.empty())
        throw std::invalid_argument("mutual_information: coordinate sets must cover every coordinate");

    // Joint reordered as (a, b) so it lines up with marginal(a) ⊗ marginal(b).
    std::vector<std::size_t> order = coords_a;
    order.insert(order.end(), coords_b.begin(), coords_b.end());
    const JointDistribution joint = marginal(p, order);
    return kl(joint, product(marginal(p, coords_a), marginal(p, coords_b)));
}

double hellinger_to_split(const JointDistribution& p, std::size_t coord) {
    const std::size_t m = p.coordinates();
    if (coord >= m) throw std::invalid_argument("hellinger_to_split: coordinate out of range");
    std::vector<std::size_t> rest;
    for (std::size_t c = 0; c < m; ++c)
        if (c != coord) rest.push_back(c);
    if (rest.empty()) return 0.0;
    const JointDistribution pi = marginal(p, {coord});
    const JointDistribution prest = marginal(p, rest);
    // Reference q(x) = p_i(x_i) p_rest(x_rest) in P's own coordinate order.
    VectorXd q(p.probs().size());
    BasisIndex rd(rest.size());
    for (std::size_t x = 0; x < p.layout().total_dim(); ++x) {
        const BasisIndex d = p.layout().decode(x);
        for (std::size_t k = 0; k < rest.size(); ++k) rd[k] = d[rest[k]];
        q(static_cast<Eigen::Index>(x)) = pi[d[coord]] * prest[prest.layout().encode(rd)];
    }
    return hellinger(p, JointDistribution(p.layout(), std::move(q)));
}

HellingerKlReport check_hellinger_kl(const JointDistribution& p, const JointDistribution& q) {
    HellingerKlReport r;
    r.kl = kl(p, q);
    r.hellinger = hellinger(p, q);
    r.holds = r.kl >= 2.0 * r.hellinger * r.hellinger - 1e-12;
    return r;
}

TensorizationReport check_tensorization(const JointDistribution& p, double delta) {
    const std::size_t m = p.coordinates();
    if (m < 2) throw std::invalid_argument("check_tensorization: need at least two coordinates");
    TensorizationReport r;
    r.hypothesis = true;
    for (std::size_t i = 0; i + 1 < m; ++i) {
        r.per_coordinate.push_back(hellinger_to_split(p, i));
        if (r.per_coordinate.back() > delta) r.hypothesis = false;
    }
    r.global = hellinger(p, product_of_marginals(p));
    r.holds = !r.hypothesis || r.global <= static_cast<double>(m - 1) * delta + 1e-12;
    return r;
}

}  // namespace stoqext
