#pragma once

#include <algorithm>
#include <compare>
#include <numeric>
#include <vector>

#include "ybset/errors.hpp"

namespace ybset {

// A bijection of {0..n-1} stored as its image array.
class Permutation {
  public:
    Permutation() = default;

    explicit Permutation(std::vector<int> images) : img_(std::move(images)) {
        std::vector<char> seen(img_.size(), 0);
        for (int v : img_) {
            if (v < 0 || v >= (int)img_.size() || seen[v])
                throw StructuralError("permutation images are not a bijection");
            seen[v] = 1;
        }
    }

    static Permutation identity(int n) {
        Permutation p;
        p.img_.resize(n);
        std::iota(p.img_.begin(), p.img_.end(), 0);
        return p;
    }

    int size() const { return (int)img_.size(); }
    int operator()(int x) const { return img_[x]; }
    const std::vector<int>& images() const { return img_; }

    bool is_identity() const {
        for (int i = 0; i < size(); i++)
            if (img_[i] != i) return false;
        return true;
    }

    Permutation inverse() const {
        Permutation p;
        p.img_.resize(img_.size());
        for (int i = 0; i < size(); i++) p.img_[img_[i]] = i;
        return p;
    }

    // (a * b)(x) = a(b(x))
    friend Permutation operator*(const Permutation& a, const Permutation& b) {
        Permutation p;
        p.img_.resize(a.img_.size());
        for (int i = 0; i < a.size(); i++) p.img_[i] = a.img_[b.img_[i]];
        return p;
    }

    // Cycle lengths, sorted ascending.
    std::vector<int> cycle_type() const {
        std::vector<int> type;
        std::vector<char> seen(img_.size(), 0);
        for (int i = 0; i < size(); i++) {
            if (seen[i]) continue;
            int len = 0;
            for (int j = i; !seen[j]; j = img_[j]) {
                seen[j] = 1;
                len++;
            }
            type.push_back(len);
        }
        std::sort(type.begin(), type.end());
        return type;
    }

    int order() const {
        long long m = 1;
        for (int c : cycle_type()) m = std::lcm(m, (long long)c);
        return (int)m;
    }

    Permutation power(long long k) const {
        int ord = order();
        k %= ord;
        if (k < 0) k += ord;
        Permutation r = identity(size());
        for (long long i = 0; i < k; i++) r = *this * r;
        return r;
    }

    auto operator<=>(const Permutation&) const = default;

  private:
    std::vector<int> img_;
};

}  // namespace ybset
