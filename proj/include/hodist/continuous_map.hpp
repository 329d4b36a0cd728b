#pragma once

#include <cstdint>
#include <cstdlib>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodist/error.hpp"
#include "hodist/finite_space.hpp"

namespace hodist {

// Enumeration caps. Refusals are explicit (never silent truncation) and name
// the bottleneck. HODIST_MAX_MAPS overrides the map-enumeration cap; the
// same cap bounds the state count of homotopy searches.
struct Limits {
    std::uint64_t max_maps = 200000;
    std::uint64_t max_opens = 1u << 20;

    static Limits from_env() {
        Limits l;
        if (const char* v = std::getenv("HODIST_MAX_MAPS")) {
            char* end = nullptr;
            unsigned long long x = std::strtoull(v, &end, 10);
            if (end == v || *end != '\0' || x == 0)
                throw_input(std::string("HODIST_MAX_MAPS is not a positive integer: ") + v);
            l.max_maps = x;
        }
        return l;
    }
};

// An order-preserving point assignment between two finite spaces; for finite
// spaces this is exactly topological continuity.
struct ContinuousMap {
    SpacePtr dom;
    SpacePtr cod;
    std::vector<std::uint8_t> img;  // domain point index -> codomain point index

    int at(int x) const { return img[static_cast<std::size_t>(x)]; }

    bool operator==(const ContinuousMap& o) const {
        return *dom == *o.dom && *cod == *o.cod && img == o.img;
    }

    std::string key() const { return std::string(img.begin(), img.end()); }

    std::string str() const {
        std::string s = "[";
        for (int x = 0; x < dom->size(); ++x) {
            if (x) s += ",";
            s += dom->name(x) + "->" + cod->name(at(x));
        }
        return s + "]";
    }
};

inline bool order_preserving(const FiniteSpace& X, const FiniteSpace& Y,
                             const std::vector<std::uint8_t>& img) {
    for (int x = 0; x < X.size(); ++x)
        for (int y = x + 1; y < X.size(); ++y) {
            if (X.leq(x, y) && !Y.leq(img[static_cast<std::size_t>(x)], img[static_cast<std::size_t>(y)])) return false;
            if (X.leq(y, x) && !Y.leq(img[static_cast<std::size_t>(y)], img[static_cast<std::size_t>(x)])) return false;
        }
    return true;
}

inline ContinuousMap make_map(SpacePtr dom, SpacePtr cod, std::vector<std::uint8_t> img) {
    if (static_cast<int>(img.size()) != dom->size())
        throw_input("assignment must cover every domain point");
    for (auto v : img)
        if (v >= cod->size()) throw_input("assignment hits an unknown codomain point");
    if (!order_preserving(*dom, *cod, img))
        throw_input("assignment is not order-preserving (not continuous)");
    return ContinuousMap{std::move(dom), std::move(cod), std::move(img)};
}

inline ContinuousMap identity_map(SpacePtr X) {
    std::vector<std::uint8_t> img(static_cast<std::size_t>(X->size()));
    for (int i = 0; i < X->size(); ++i) img[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i);
    SpacePtr c = X;
    return ContinuousMap{std::move(X), std::move(c), std::move(img)};
}

inline ContinuousMap constant_map(SpacePtr dom, SpacePtr cod, int target) {
    if (target < 0 || target >= cod->size()) throw_input("constant target out of range");
    std::vector<std::uint8_t> img(static_cast<std::size_t>(dom->size()),
                                  static_cast<std::uint8_t>(target));
    return ContinuousMap{std::move(dom), std::move(cod), std::move(img)};
}

// Restriction of f to an open (or arbitrary) subset U of its domain; the
// result's domain is the subspace on U, points in ambient order.
inline ContinuousMap restrict_map(const ContinuousMap& f, Mask U) {
    auto sub = share(f.dom->subspace(U));
    std::vector<std::uint8_t> img;
    img.reserve(static_cast<std::size_t>(mask_count(U)));
    mask_for_each(U, [&](int x) { img.push_back(f.img[static_cast<std::size_t>(x)]); });
    return ContinuousMap{std::move(sub), f.cod, std::move(img)};
}

// Product of two spaces together with the canonical maps in and out of it.
struct ProductSpace {
    SpacePtr left;
    SpacePtr right;
    SpacePtr prod;

    static ProductSpace make(SpacePtr l, SpacePtr r) {
        auto p = share(l->product(*r));
        return ProductSpace{std::move(l), std::move(r), std::move(p)};
    }

    int pair_index(int i, int j) const { return i * right->size() + j; }

    ContinuousMap projection(int which) const {
        std::vector<std::uint8_t> img;
        img.reserve(static_cast<std::size_t>(prod->size()));
        for (int i = 0; i < left->size(); ++i)
            for (int j = 0; j < right->size(); ++j)
                img.push_back(static_cast<std::uint8_t>(which == 0 ? i : j));
        return ContinuousMap{prod, which == 0 ? left : right, std::move(img)};
    }

    // x -> (x, basepoint) resp. x -> (basepoint, x); defined when both
    // factors are the same space.
    ContinuousMap axis_inclusion(int which, int basepoint) const {
        if (!(*left == *right)) throw_input("axis inclusion needs equal factors");
        std::vector<std::uint8_t> img;
        img.reserve(static_cast<std::size_t>(left->size()));
        for (int x = 0; x < left->size(); ++x)
            img.push_back(static_cast<std::uint8_t>(which == 0 ? pair_index(x, basepoint)
                                                                : pair_index(basepoint, x)));
        return ContinuousMap{left, prod, std::move(img)};
    }
};

// All continuous maps dom -> cod in canonical order (lexicographic image
// vectors over the domain's point order). Refuses past the cap.
inline std::vector<ContinuousMap> continuous_maps(SpacePtr dom, SpacePtr cod,
                                                  const Limits& limits = {}) {
    const FiniteSpace& X = *dom;
    const FiniteSpace& Y = *cod;
    std::vector<ContinuousMap> out;
    int n = X.size();
    if (n == 0) {
        out.push_back(ContinuousMap{dom, cod, {}});
        return out;
    }
    std::vector<std::uint8_t> img(static_cast<std::size_t>(n), 0);
    // Depth-first assignment in point order; candidate images filtered by
    // the constraints of already-assigned comparable points.
    auto admissible = [&](int p, int q) {
        for (int x = 0; x < p; ++x) {
            if (X.leq(x, p) && !Y.leq(img[static_cast<std::size_t>(x)], q)) return false;
            if (X.leq(p, x) && !Y.leq(q, img[static_cast<std::size_t>(x)])) return false;
        }
        return true;
    };
    std::uint64_t produced = 0;
    auto rec = [&](auto&& self, int p) -> void {
        if (p == n) {
            if (++produced > limits.max_maps)
                throw_guard("map enumeration exceeds HODIST_MAX_MAPS=" +
                            std::to_string(limits.max_maps));
            out.push_back(ContinuousMap{dom, cod, img});
            return;
        }
        for (int q = 0; q < Y.size(); ++q)
            if (admissible(p, q)) {
                img[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(q);
                self(self, p + 1);
            }
    };
    rec(rec, 0);
    return out;
}

}  // namespace hodist
