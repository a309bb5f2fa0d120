#include "stoqext/symmetric.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

namespace stoqext {

std::size_t binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0;
    k = std::min(k, n - k);
    std::size_t out = 1;
    for (std::size_t i = 1; i <= k; ++i) out = out * (n - k + i) / i;
    return out;
}

namespace {

void enumerate(std::size_t d, std::size_t remaining, Occupation& cur, std::vector<Occupation>& out) {
    const std::size_t pos = cur.size();
    if (pos + 1 == d) {
        cur.push_back(remaining);
        out.push_back(cur);
        cur.pop_back();
        return;
    }
    for (std::size_t n = remaining + 1; n-- > 0;) {
        cur.push_back(n);
        enumerate(d, remaining - n, cur, out);
        cur.pop_back();
    }
}

/// R! / prod n_j!
double multinomial(const Occupation& n) {
    double out = 1.0;
    std::size_t total = 0;
    for (std::size_t nj : n)
        for (std::size_t t = 1; t <= nj; ++t) {
            ++total;
            out = out * static_cast<double>(total) / static_cast<double>(t);
        }
    return out;
}

}  // namespace

SymmetricBasis::SymmetricBasis(std::size_t local_dim, std::size_t copies) : d_(local_dim), r_(copies) {
    if (d_ == 0) throw std::invalid_argument("SymmetricBasis: local dimension must be >= 1");
    Occupation cur;
    enumerate(d_, r_, cur, occupations_);
    for (std::size_t k = 0; k < occupations_.size(); ++k) index_.emplace(occupations_[k], k);
}

std::size_t SymmetricBasis::index_of(const Occupation& n) const {
    auto it = index_.find(n);
    if (it == index_.end()) throw std::out_of_range("SymmetricBasis: occupation not in basis");
    return it->second;
}

SparseMatrixXd SymmetricBasis::isometry() const {
    const RegisterLayout strings(std::vector<std::size_t>(r_, d_));
    std::vector<double> norm(size());
    for (std::size_t k = 0; k < size(); ++k) norm[k] = 1.0 / std::sqrt(multinomial(occupations_[k]));
    std::vector<Eigen::Triplet<double>> trips;
    trips.reserve(strings.total_dim());
    Occupation n(d_);
    for (std::size_t s = 0; s < strings.total_dim(); ++s) {
        std::fill(n.begin(), n.end(), 0);
        for (std::size_t digit : strings.decode(s)) ++n[digit];
        const std::size_t k = index_of(n);
        trips.emplace_back(static_cast<int>(s), static_cast<int>(k), norm[k]);
    }
    SparseMatrixXd v(static_cast<Eigen::Index>(strings.total_dim()), static_cast<Eigen::Index>(size()));
    v.setFromTriplets(trips.begin(), trips.end());
    return v;
}

SparseMatrixXd SymmetricBasis::first_copy_split() const {
    if (r_ == 0) throw std::domain_error("first_copy_split: no copy to split off");
    const SymmetricBasis reduced(d_, r_ - 1);
    std::vector<Eigen::Triplet<double>> trips;
    for (std::size_t k = 0; k < size(); ++k) {
        Occupation n = occupations_[k];
        for (std::size_t j = 0; j < d_; ++j) {
            if (n[j] == 0) continue;
            const double amp = std::sqrt(static_cast<double>(n[j]) / static_cast<double>(r_));
            --n[j];
            trips.emplace_back(static_cast<int>(j * reduced.size() + reduced.index_of(n)), static_cast<int>(k), amp);
            ++n[j];
        }
    }
    SparseMatrixXd f(static_cast<Eigen::Index>(d_ * reduced.size()), static_cast<Eigen::Index>(size()));
    f.setFromTriplets(trips.begin(), trips.end());
    return f;
}

SparseMatrixXd SymmetricBasis::remove_copy(std::size_t outcome) const {
    if (r_ == 0) throw std::domain_error("remove_copy: no copy to remove");
    if (outcome >= d_) throw std::out_of_range("remove_copy: outcome out of range");
    const SymmetricBasis reduced(d_, r_ - 1);
    std::vector<Eigen::Triplet<double>> trips;
    for (std::size_t k = 0; k < size(); ++k) {
        Occupation n = occupations_[k];
        if (n[outcome] == 0) continue;
        const double amp = std::sqrt(static_cast<double>(n[outcome]) / static_cast<double>(r_));
        --n[outcome];
        trips.emplace_back(static_cast<int>(reduced.index_of(n)), static_cast<int>(k), amp);
    }
    SparseMatrixXd k(static_cast<Eigen::Index>(reduced.size()), static_cast<Eigen::Index>(size()));
    k.setFromTriplets(trips.begin(), trips.end());
    return k;
}

VectorXd SymmetricBasis::lift(const VectorXd& x) const {
    if (static_cast<std::size_t>(x.size()) != d_) throw std::invalid_argument("lift: vector dimension mismatch");
    VectorXd out(static_cast<Eigen::Index>(size()));
    for (std::size_t k = 0; k < size(); ++k) {
        const Occupation& n = occupations_[k];
        double v = std::sqrt(multinomial(n));
        for (std::size_t j = 0; j < d_; ++j) v *= std::pow(x(static_cast<Eigen::Index>(j)), static_cast<double>(n[j]));
        out(static_cast<Eigen::Index>(k)) = v;
    }
    return out;
}

RealOperator sym_projector(std::size_t local_dim, std::size_t copies, std::size_t max_dim) {
    const RegisterLayout layout(std::vector<std::size_t>(copies, local_dim));
    if (layout.total_dim() > max_dim)
        throw std::length_error("sym_projector: dimension " + std::to_string(layout.total_dim()) +
                                " exceeds cap " + std::to_string(max_dim));
    std::vector<std::size_t> perm(copies);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    const auto n = static_cast<Eigen::Index>(layout.total_dim());
    MatrixXd sum = MatrixXd::Zero(n, n);
    double count = 0.0;
    BasisIndex moved(copies);
    do {
        for (std::size_t x = 0; x < layout.total_dim(); ++x) {
            const BasisIndex digits = layout.decode(x);
            for (std::size_t i = 0; i < copies; ++i) moved[perm[i]] = digits[i];
            sum(static_cast<Eigen::Index>(layout.encode(moved)), static_cast<Eigen::Index>(x)) += 1.0;
        }
        count += 1.0;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return RealOperator(layout, sum / count);
}

SeparatelySymmetricSpace::SeparatelySymmetricSpace(RegisterLayout base, std::vector<std::size_t> copies)
    : base_(std::move(base)), copies_(std::move(copies)) {
    if (base_.size() < 2) throw std::invalid_argument("SeparatelySymmetricSpace: need at least two registers");
    if (copies_.size() + 1 != base_.size())
        throw std::invalid_argument("SeparatelySymmetricSpace: need one copy count per extended register");
    std::vector<std::size_t> cdims, rdims;
    for (std::size_t i = 0; i < copies_.size(); ++i) {
        if (copies_[i] == 0) throw std::invalid_argument("SeparatelySymmetricSpace: copy counts must be >= 1");
        blocks_.emplace_back(base_.dim(i), copies_[i]);
        reduced_.emplace_back(base_.dim(i), copies_[i] - 1);
        cdims.push_back(blocks_.back().size());
        rdims.push_back(reduced_.back().size());
    }
    cdims.push_back(base_.dim(base_.size() - 1));
    compressed_ = RegisterLayout(cdims);
    rest_ = RegisterLayout(rdims);

    // First-copy split of every block at once.
    const std::size_t m1 = copies_.size();
    std::vector<Eigen::Triplet<double>> trips;
    BasisIndex alpha(base_.size());
    BasisIndex rest(m1);
    for (std::size_t c = 0; c < dim(); ++c) {
        const BasisIndex digits = compressed_.decode(c);
        alpha[m1] = digits[m1];
        // Enumerate first-copy values j_i with n_i[j_i] >= 1.
        std::vector<std::size_t> j(m1, 0);
        while (true) {
            bool valid = true;
            double amp = 1.0;
            for (std::size_t i = 0; i < m1 && valid; ++i) {
                const Occupation& n = blocks_[i].occupation(digits[i]);
                if (n[j[i]] == 0) {
                    valid = false;
                    break;
                }
                amp *= std::sqrt(static_cast<double>(n[j[i]]) / static_cast<double>(copies_[i]));
                Occupation reduced = n;
                --reduced[j[i]];
                rest[i] = reduced_[i].index_of(reduced);
                alpha[i] = j[i];
            }
            if (valid) {
                const std::size_t row = base_.encode(alpha) * rest_.total_dim() + rest_.encode(rest);
                trips.emplace_back(static_cast<int>(row), static_cast<int>(c), amp);
            }
            std::size_t k = m1;
            while (k-- > 0) {
                if (++j[k] < base_.dim(k)) break;
                j[k] = 0;
            }
            if (k == static_cast<std::size_t>(-1)) break;
        }
    }
    split_ = SparseMatrixXd(static_cast<Eigen::Index>(base_.total_dim() * rest_.total_dim()),
                            static_cast<Eigen::Index>(dim()));
    split_.setFromTriplets(trips.begin(), trips.end());
}

RegisterLayout SeparatelySymmetricSpace::full_layout() const {
    std::vector<std::size_t> dims;
    for (std::size_t i = 0; i < copies_.size(); ++i) dims.insert(dims.end(), copies_[i], base_.dim(i));
    dims.push_back(base_.dim(base_.size() - 1));
    return RegisterLayout(dims);
}

std::vector<std::size_t> SeparatelySymmetricSpace::tested_positions() const {
    std::vector<std::size_t> pos;
    std::size_t offset = 0;
    for (std::size_t r : copies_) {
        pos.push_back(offset);
        offset += r;
    }
    pos.push_back(offset);
    return pos;
}

SparseMatrixXd SeparatelySymmetricSpace::isometry() const {
    SparseMatrixXd acc(1, 1);
    acc.insert(0, 0) = 1.0;
    auto kron = [](const SparseMatrixXd& a, const SparseMatrixXd& b) {
        std::vector<Eigen::Triplet<double>> trips;
        for (int i = 0; i < a.outerSize(); ++i)
            for (SparseMatrixXd::InnerIterator ia(a, i); ia; ++ia)
                for (int k = 0; k < b.outerSize(); ++k)
                    for (SparseMatrixXd::InnerIterator ib(b, k); ib; ++ib)
                        trips.emplace_back(static_cast<int>(ia.row() * b.rows() + ib.row()),
                                           static_cast<int>(ia.col() * b.cols() + ib.col()), ia.value() * ib.value());
        SparseMatrixXd out(a.rows() * b.rows(), a.cols() * b.cols());
        out.setFromTriplets(trips.begin(), trips.end());
        return out;
    };
    for (const SymmetricBasis& b : blocks_) acc = kron(acc, b.isometry());
    const auto dm = static_cast<Eigen::Index>(base_.dim(base_.size() - 1));
    SparseMatrixXd id(dm, dm);
    id.setIdentity();
    return kron(acc, id);
}

std::vector<std::size_t> SeparatelySymmetricSpace::copies_after_removal(std::size_t block) const {
    if (block >= copies_.size()) throw std::out_of_range("copies_after_removal: block out of range");
    if (copies_[block] < 2) throw std::domain_error("copies_after_removal: block has a single copy");
    std::vector<std::size_t> out = copies_;
    --out[block];
    return out;
}

SparseMatrixXd SeparatelySymmetricSpace::remove_copy(std::size_t block, std::size_t outcome) const {
    const SeparatelySymmetricSpace target(base_, copies_after_removal(block));
    const SparseMatrixXd k = blocks_[block].remove_copy(outcome);
    // Dense row lookup: compressed index c -> (digits), apply k on block digit.
    std::vector<Eigen::Triplet<double>> trips;
    std::vector<std::vector<std::pair<std::size_t, double>>> images(blocks_[block].size());
    for (int row = 0; row < k.outerSize(); ++row)
        for (SparseMatrixXd::InnerIterator it(k, row); it; ++it)
            images[static_cast<std::size_t>(it.col())].emplace_back(static_cast<std::size_t>(it.row()), it.value());
    for (std::size_t c = 0; c < dim(); ++c) {
        const BasisIndex digits = compressed_.decode(c);
        for (const auto& [to, amp] : images[digits[block]]) {
            BasisIndex moved = digits;
            moved[block] = to;
            trips.emplace_back(static_cast<int>(target.compressed_layout().encode(moved)), static_cast<int>(c), amp);
        }
    }
    SparseMatrixXd out(static_cast<Eigen::Index>(target.dim()), static_cast<Eigen::Index>(dim()));
    out.setFromTriplets(trips.begin(), trips.end());
    return out;
}

}  // namespace stoqext
