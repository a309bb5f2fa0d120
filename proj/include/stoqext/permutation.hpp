#pragma once

#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <string>
#include <vector>

namespace stoqext {

/// A permutation of {0, ..., n-1}, stored as its image table: `(*this)(i)` is
/// where element i is sent.
class Permutation {
public:
    Permutation() = default;
    explicit Permutation(std::vector<std::size_t> images) : images_(std::move(images)) {
        std::vector<bool> seen(images_.size(), false);
        for (std::size_t v : images_) {
            if (v >= images_.size() || seen[v])
                throw std::invalid_argument("Permutation: image table is not a bijection");
            seen[v] = true;
        }
    }
    Permutation(std::initializer_list<std::size_t> images)
        : Permutation(std::vector<std::size_t>(images)) {}

    static Permutation identity(std::size_t n) {
        std::vector<std::size_t> images(n);
        for (std::size_t i = 0; i < n; ++i) images[i] = i;
        return Permutation(std::move(images));
    }

    std::size_t size() const { return images_.size(); }
    std::size_t operator()(std::size_t i) const { return images_.at(i); }
    const std::vector<std::size_t>& images() const { return images_; }

    bool is_identity() const {
        for (std::size_t i = 0; i < images_.size(); ++i)
            if (images_[i] != i) return false;
        return true;
    }

    Permutation inverse() const {
        std::vector<std::size_t> inv(images_.size());
        for (std::size_t i = 0; i < images_.size(); ++i) inv[images_[i]] = i;
        return Permutation(std::move(inv));
    }

    /// (a * b)(i) = a(b(i)).
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        if (a.size() != b.size()) throw std::invalid_argument("Permutation: size mismatch");
        std::vector<std::size_t> out(a.size());
        for (std::size_t i = 0; i < a.size(); ++i) out[i] = a.images_[b.images_[i]];
        return Permutation(std::move(out));
    }

    friend bool operator==(const Permutation&, const Permutation&) = default;
    friend auto operator<=>(const Permutation& a, const Permutation& b) {
        return a.images_ <=> b.images_;
    }

    std::string to_string() const {
        std::string s = "[";
        for (std::size_t i = 0; i < images_.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(images_[i]);
        }
        return s + "]";
    }

private:
    std::vector<std::size_t> images_;
};

}  // namespace stoqext
