#pragma once

#include <bit>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <vector>

namespace hodist {

// Point sets of a finite space. Spaces are capped at 64 points, so a plain
// word suffices and keeps set algebra branch-free.
using Mask = std::uint64_t;

inline int mask_count(Mask m) { return std::popcount(m); }
inline Mask mask_bit(int i) { return Mask{1} << i; }
inline bool mask_test(Mask m, int i) { return (m >> i) & Mask{1}; }
inline bool mask_subset(Mask a, Mask b) { return (a & ~b) == 0; }

template <typename F>
void mask_for_each(Mask m, F&& f) {
    while (m) {
        f(std::countr_zero(m));
        m &= m - 1;
    }
}

inline std::vector<int> mask_indices(Mask m) {
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(mask_count(m)));
    mask_for_each(m, [&](int i) { out.push_back(i); });
    return out;
}

// Canonical order on point sets: compare the ascending index sequences
// lexicographically. Used everywhere a deterministic listing of opens or
// certificates is required.
inline bool mask_seq_less(Mask a, Mask b) {
    while (a && b) {
        int ia = std::countr_zero(a);
        int ib = std::countr_zero(b);
        if (ia != ib) return ia < ib;
        a &= a - 1;
        b &= b - 1;
    }
    return !a && b;
}

// Dynamically sized bit set for carriers larger than a space (map-space
// carriers, topology computations). Trailing bits of the last word stay zero.
class DynBits {
public:
    DynBits() = default;
    explicit DynBits(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static DynBits full(std::size_t n) {
        DynBits b(n);
        for (std::size_t i = 0; i + 1 < b.w_.size(); ++i) b.w_[i] = ~std::uint64_t{0};
        if (!b.w_.empty()) {
            std::size_t rem = n % 64;
            b.w_.back() = rem ? ((std::uint64_t{1} << rem) - 1) : ~std::uint64_t{0};
        }
        return b;
    }

    std::size_t size() const { return n_; }

    void set(std::size_t i) { w_[i / 64] |= std::uint64_t{1} << (i % 64); }
    void reset(std::size_t i) { w_[i / 64] &= ~(std::uint64_t{1} << (i % 64)); }
    bool test(std::size_t i) const { return (w_[i / 64] >> (i % 64)) & 1; }

    std::size_t count() const {
        std::size_t c = 0;
        for (auto w : w_) c += static_cast<std::size_t>(std::popcount(w));
        return c;
    }
    bool any() const {
        for (auto w : w_)
            if (w) return true;
        return false;
    }
    bool none() const { return !any(); }

    bool subset_of(const DynBits& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & ~o.w_[i]) return false;
        return true;
    }
    bool intersects(const DynBits& o) const {
        for (std::size_t i = 0; i < w_.size(); ++i)
            if (w_[i] & o.w_[i]) return true;
        return false;
    }

    DynBits& operator&=(const DynBits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    DynBits& operator|=(const DynBits& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] |= o.w_[i];
        return *this;
    }
    friend DynBits operator&(DynBits a, const DynBits& b) { return a &= b; }
    friend DynBits operator|(DynBits a, const DynBits& b) { return a |= b; }

    DynBits complement() const {
        DynBits r = full(n_);
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~w_[i];
        return r;
    }
    DynBits minus(const DynBits& o) const {
        DynBits r = *this;
        for (std::size_t i = 0; i < w_.size(); ++i) r.w_[i] &= ~o.w_[i];
        return r;
    }

    bool operator==(const DynBits& o) const { return n_ == o.n_ && w_ == o.w_; }

    // Ascending-index-sequence order, matching mask_seq_less.
    bool seq_less(const DynBits& o) const {
        std::size_t i = 0, j = 0;
        while (true) {
            while (i < n_ && !test(i)) ++i;
            while (j < o.n_ && !o.test(j)) ++j;
            bool ea = i >= n_, eb = j >= o.n_;
            if (ea || eb) return ea && !eb;
            if (i != j) return i < j;
            ++i;
            ++j;
        }
    }

    template <typename F>
    void for_each(F&& f) const {
        for (std::size_t i = 0; i < w_.size(); ++i) {
            std::uint64_t w = w_[i];
            while (w) {
                f(i * 64 + static_cast<std::size_t>(std::countr_zero(w)));
                w &= w - 1;
            }
        }
    }
    std::vector<std::size_t> indices() const {
        std::vector<std::size_t> out;
        out.reserve(count());
        for_each([&](std::size_t i) { out.push_back(i); });
        return out;
    }

    std::size_t hash() const {
        std::size_t h = n_ * 0x9e3779b97f4a7c15ull;
        for (auto w : w_) h = (h ^ w) * 0x100000001b3ull;
        return h;
    }

private:
    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

struct DynBitsHash {
    std::size_t operator()(const DynBits& b) const { return b.hash(); }
};

}  // namespace hodist
