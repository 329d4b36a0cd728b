#pragma once

#include <cstdint>
#include <deque>
#include <numeric>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hodist/continuous_map.hpp"
#include "hodist/error.hpp"
#include "hodist/finite_space.hpp"

namespace hodist {

// Homotopy between maps of finite spaces is decided by the fence criterion:
// f ~ g iff they are joined by a chain of continuous maps in which
// consecutive maps are pointwise comparable. Every comparability step
// decomposes into moves that change a single point's image to a comparable
// value, so breadth-first search over single-point moves decides the
// relation without materializing the full map space.

struct HomotopyOptions {
    // Reduce domain and codomain to their Stong cores first. Removing beat
    // points is a deformation retraction, so f ~ g iff the induced maps
    // between the cores are homotopic. Purely an accelerator; validated
    // against the plain search and the comparability-graph oracle.
    bool use_core = true;
};

namespace detail {

// Single-point-move reachability between two image vectors over fixed
// spaces. Explores the fence component of `from` until `to` is found or the
// component is exhausted.
inline bool fence_reachable(const FiniteSpace& X, const FiniteSpace& Y,
                            std::vector<std::uint8_t> from, std::vector<std::uint8_t> to,
                            std::uint64_t state_cap) {
    if (from == to) return true;
    int n = X.size();
    std::string target(to.begin(), to.end());
    std::unordered_set<std::string> seen;
    std::deque<std::vector<std::uint8_t>> queue;
    seen.insert(std::string(from.begin(), from.end()));
    queue.push_back(std::move(from));
    std::vector<Mask> comparable(static_cast<std::size_t>(Y.size()));
    for (int q = 0; q < Y.size(); ++q)
        comparable[static_cast<std::size_t>(q)] = (Y.min_open(q) | Y.closure_of(q)) & ~mask_bit(q);
    while (!queue.empty()) {
        std::vector<std::uint8_t> cur = std::move(queue.front());
        queue.pop_front();
        for (int p = 0; p < n; ++p) {
            std::uint8_t old = cur[static_cast<std::size_t>(p)];
            Mask cand = comparable[old];
            bool hit = false;
            mask_for_each(cand, [&](int q) {
                if (hit) return;
                // Local continuity: only pairs through p can break.
                for (int x = 0; x < n; ++x) {
                    if (x == p) continue;
                    if (X.leq(x, p) && !Y.leq(cur[static_cast<std::size_t>(x)], q)) return;
                    if (X.leq(p, x) && !Y.leq(q, cur[static_cast<std::size_t>(x)])) return;
                }
                cur[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(q);
                std::string k(cur.begin(), cur.end());
                if (k == target) {
                    hit = true;
                } else if (seen.insert(std::move(k)).second) {
                    if (seen.size() > state_cap)
                        throw_guard("homotopy search exceeds " + std::to_string(state_cap) +
                                    " states (raise HODIST_MAX_MAPS)");
                    queue.push_back(cur);
                }
                cur[static_cast<std::size_t>(p)] = old;
            });
            if (hit) return true;
        }
    }
    return false;
}

}  // namespace detail

inline bool are_homotopic(const ContinuousMap& f, const ContinuousMap& g,
                          const Limits& limits = {}, const HomotopyOptions& opts = {}) {
    if (!(*f.dom == *g.dom) || !(*f.cod == *g.cod))
        throw_input("are_homotopic requires a shared domain and codomain");
    if (f.img == g.img) return true;
    if (f.dom->size() == 0) return true;

    // Component obstruction: along a fence every point's image stays in one
    // connected component of the codomain.
    {
        const FiniteSpace& Y = *f.cod;
        auto comps = Y.components();
        std::vector<int> comp_of(static_cast<std::size_t>(Y.size()), 0);
        for (int c = 0; c < static_cast<int>(comps.size()); ++c)
            mask_for_each(comps[static_cast<std::size_t>(c)],
                          [&](int p) { comp_of[static_cast<std::size_t>(p)] = c; });
        for (int x = 0; x < f.dom->size(); ++x)
            if (comp_of[static_cast<std::size_t>(f.at(x))] != comp_of[static_cast<std::size_t>(g.at(x))])
                return false;
    }

    if (!opts.use_core)
        return detail::fence_reachable(*f.dom, *f.cod, f.img, g.img, limits.max_maps);

    auto xcore = f.dom->core();
    auto ycore = f.cod->core();
    int k = static_cast<int>(xcore.ambient_of.size());
    std::vector<std::uint8_t> rf(static_cast<std::size_t>(k)), rg(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) {
        int x = xcore.ambient_of[static_cast<std::size_t>(i)];
        rf[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(ycore.core_index_of[static_cast<std::size_t>(f.at(x))]);
        rg[static_cast<std::size_t>(i)] =
            static_cast<std::uint8_t>(ycore.core_index_of[static_cast<std::size_t>(g.at(x))]);
    }
    return detail::fence_reachable(xcore.core, ycore.core, std::move(rf), std::move(rg),
                                   limits.max_maps);
}

struct HomotopyPartition {
    std::vector<int> class_of;             // map index -> class id
    std::vector<std::vector<int>> blocks;  // class id -> member map indices, ascending
    int representative(int cls) const { return blocks[static_cast<std::size_t>(cls)].front(); }
};

// Partition of an enumerated map list into homotopy classes. Walks
// single-point moves inside the list (the list must be the full map space,
// as produced by continuous_maps), so no pairwise comparability scan is
// needed; the comparability-graph partition is kept separately as a
// reference implementation.
inline HomotopyPartition homotopy_classes(const std::vector<ContinuousMap>& maps) {
    HomotopyPartition part;
    std::size_t m = maps.size();
    if (m == 0) return part;
    const FiniteSpace& X = *maps.front().dom;
    const FiniteSpace& Y = *maps.front().cod;
    std::unordered_map<std::string, int> at;
    at.reserve(m * 2);
    for (std::size_t i = 0; i < m; ++i) at.emplace(maps[i].key(), static_cast<int>(i));

    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    auto unite = [&](int a, int b) { parent[static_cast<std::size_t>(find(a))] = find(b); };

    std::vector<Mask> comparable(static_cast<std::size_t>(Y.size()));
    for (int q = 0; q < Y.size(); ++q)
        comparable[static_cast<std::size_t>(q)] = (Y.min_open(q) | Y.closure_of(q)) & ~mask_bit(q);

    std::vector<std::uint8_t> img;
    for (std::size_t i = 0; i < m; ++i) {
        img = maps[i].img;
        for (int p = 0; p < X.size(); ++p) {
            std::uint8_t old = img[static_cast<std::size_t>(p)];
            mask_for_each(comparable[old], [&](int q) {
                img[static_cast<std::size_t>(p)] = static_cast<std::uint8_t>(q);
                auto it = at.find(std::string(img.begin(), img.end()));
                if (it != at.end()) unite(static_cast<int>(i), it->second);
            });
            img[static_cast<std::size_t>(p)] = old;
        }
    }

    part.class_of.assign(m, -1);
    std::unordered_map<int, int> ids;
    for (std::size_t i = 0; i < m; ++i) {
        int r = find(static_cast<int>(i));
        auto it = ids.find(r);
        int id;
        if (it == ids.end()) {
            id = static_cast<int>(part.blocks.size());
            ids.emplace(r, id);
            part.blocks.emplace_back();
        } else {
            id = it->second;
        }
        part.class_of[i] = id;
        part.blocks[static_cast<std::size_t>(id)].push_back(static_cast<int>(i));
    }
    return part;
}

// Whether the inclusion of the subset U into X is homotopic to some
// constant map. U must lie inside one component of X (images keep their
// component along fences); one constant per candidate component suffices
// because constants with comparable-connected targets are homotopic.
inline bool null_homotopic_inclusion(const SpacePtr& X, Mask U, const Limits& limits = {},
                                     const HomotopyOptions& opts = {}) {
    if (!U) return true;
    auto sub = share(X->subspace(U));
    std::vector<std::uint8_t> incl;
    incl.reserve(static_cast<std::size_t>(mask_count(U)));
    mask_for_each(U, [&](int x) { incl.push_back(static_cast<std::uint8_t>(x)); });
    ContinuousMap inclusion{sub, X, std::move(incl)};
    int target = X->component_of(std::countr_zero(U));
    ContinuousMap cst = constant_map(sub, X, target);
    return are_homotopic(inclusion, cst, limits, opts);
}

}  // namespace hodist
