#pragma once

#include <algorithm>
#include <functional>
#include <numeric>
#include <optional>
#include <vector>

#include "hodist/distance.hpp"

// Reference implementations: deliberately plain alternatives to the engine's
// fast paths, used to cross-check results. Nothing here calls into the
// accelerated searches (and vice versa); agreement between the two routes is
// part of the checked contract.
namespace hodist::reference {

// Homotopy partition from the full comparability graph: two enumerated maps
// are joined iff they are pointwise comparable; classes are the connected
// components. Quadratic in the number of maps.
inline HomotopyPartition comparability_partition(const std::vector<ContinuousMap>& maps) {
    HomotopyPartition part;
    std::size_t m = maps.size();
    if (m == 0) return part;
    const FiniteSpace& Y = *maps.front().cod;
    auto pointwise_leq = [&](const ContinuousMap& a, const ContinuousMap& b) {
        for (std::size_t x = 0; x < a.img.size(); ++x)
            if (!Y.leq(a.img[x], b.img[x])) return false;
        return true;
    };
    std::vector<int> parent(m);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int a) {
        while (parent[static_cast<std::size_t>(a)] != a) {
            parent[static_cast<std::size_t>(a)] =
                parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
            a = parent[static_cast<std::size_t>(a)];
        }
        return a;
    };
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j)
            if (pointwise_leq(maps[i], maps[j]) || pointwise_leq(maps[j], maps[i]))
                parent[static_cast<std::size_t>(find(static_cast<int>(i)))] =
                    find(static_cast<int>(j));
    part.class_of.assign(m, -1);
    for (std::size_t i = 0; i < m; ++i) {
        int r = find(static_cast<int>(i));
        if (part.class_of[static_cast<std::size_t>(r)] == -1) {
            part.class_of[static_cast<std::size_t>(r)] = static_cast<int>(part.blocks.size());
            part.blocks.emplace_back();
        }
        part.class_of[i] = part.class_of[static_cast<std::size_t>(r)];
        part.blocks[static_cast<std::size_t>(part.class_of[i])].push_back(static_cast<int>(i));
    }
    return part;
}

// Restriction homotopy decided through full enumeration of Map(U, Y) plus
// the comparability partition. Only feasible for small restrictions.
inline bool restriction_homotopic(const ContinuousMap& f, const ContinuousMap& g, Mask U,
                                  const Limits& limits = {}) {
    if (!U) return true;
    ContinuousMap fr = restrict_map(f, U);
    ContinuousMap gr = restrict_map(g, U);
    auto all = continuous_maps(fr.dom, fr.cod, limits);
    auto part = comparability_partition(all);
    int fi = -1, gi = -1;
    for (std::size_t i = 0; i < all.size(); ++i) {
        if (all[i].img == fr.img) fi = static_cast<int>(i);
        if (all[i].img == gr.img) gi = static_cast<int>(i);
    }
    return part.class_of[static_cast<std::size_t>(fi)] ==
           part.class_of[static_cast<std::size_t>(gi)];
}

// All good opens for (f, g): every open of the domain, filtered by a direct
// goodness decision. `decide` defaults to the reference decision; callers
// may inject a different decider when full enumeration per open is too
// expensive.
inline std::vector<Mask> all_good_opens(
    const ContinuousMap& f, const ContinuousMap& g, const Limits& limits = {},
    const std::function<bool(Mask)>& decide = {}) {
    auto good = decide ? decide
                       : std::function<bool(Mask)>([&](Mask U) {
                             return restriction_homotopic(f, g, U, limits);
                         });
    std::vector<Mask> out;
    for (Mask U : f.dom->opens(limits.max_opens))
        if (U && good(U)) out.push_back(U);
    return out;
}

// Plain exhaustive minimum cover over an arbitrary family of good opens:
// sizes ascending, combinations in canonical order, no bounds and no
// restriction to maximal members. Returns the cover or nothing (infinite
// distance).
inline std::optional<std::vector<Mask>> plain_min_cover(const std::vector<Mask>& goods,
                                                        Mask universe) {
    if (!universe) return std::vector<Mask>{};
    Mask all = 0;
    for (Mask g : goods) all |= g;
    if (all != universe) return std::nullopt;
    std::vector<Mask> suffix(goods.size() + 1, 0);
    for (std::size_t i = goods.size(); i-- > 0;) suffix[i] = suffix[i + 1] | goods[i];
    std::vector<int> pick;
    std::function<bool(std::size_t, Mask, int)> walk = [&](std::size_t from, Mask uncovered,
                                                           int slots) {
        if (slots == 0) return !uncovered;
        for (std::size_t i = from; i + static_cast<std::size_t>(slots) <= goods.size(); ++i) {
            if (uncovered & ~(goods[i] | suffix[i + 1])) continue;
            pick.push_back(static_cast<int>(i));
            if (walk(i + 1, uncovered & ~goods[i], slots - 1)) return true;
            pick.pop_back();
        }
        return false;
    };
    for (int size = 1; size <= static_cast<int>(goods.size()); ++size) {
        pick.clear();
        if (walk(0, universe, size)) {
            std::vector<Mask> out;
            for (int i : pick) out.push_back(goods[static_cast<std::size_t>(i)]);
            return out;
        }
    }
    return std::nullopt;
}

// Reference homotopic distance: all good opens + plain cover search.
inline DistanceResult plain_distance(const ContinuousMap& f, const ContinuousMap& g,
                                     const Limits& limits = {},
                                     const std::function<bool(Mask)>& decide = {}) {
    auto goods = all_good_opens(f, g, limits, decide);
    auto cover = plain_min_cover(goods, f.dom->all_mask());
    if (!cover) return {ExtendedNat::infinity(), std::nullopt};
    return {ExtendedNat(cover->empty() ? 0 : cover->size() - 1), CoverCertificate{*cover}};
}

// Brute-force normality: every pair of disjoint closed sets, every pair of
// open neighborhoods.
inline FiniteSpace::NormalityResult normality_bruteforce(const FiniteSpace& X) {
    auto opens = X.opens();
    std::vector<Mask> closeds;
    closeds.reserve(opens.size());
    for (Mask u : opens) closeds.push_back(X.all_mask() & ~u);
    for (Mask a : closeds)
        for (Mask b : closeds) {
            if (!a || !b || (a & b)) continue;
            bool separated = false;
            for (Mask u : opens) {
                if (!mask_subset(a, u)) continue;
                for (Mask v : opens)
                    if (mask_subset(b, v) && !(u & v)) {
                        separated = true;
                        break;
                    }
                if (separated) break;
            }
            if (!separated) return {false, std::make_pair(a, b)};
        }
    return {true, std::nullopt};
}

// Connectivity reference: components as equivalence classes of "agree on
// every clopen set".
inline std::vector<Mask> components_via_clopens(const FiniteSpace& X) {
    auto opens = X.opens();
    std::vector<Mask> clopens;
    for (Mask u : opens)
        if (std::find(opens.begin(), opens.end(), X.all_mask() & ~u) != opens.end())
            clopens.push_back(u);
    std::vector<Mask> comps;
    Mask done = 0;
    for (int x = 0; x < X.size(); ++x) {
        if (mask_test(done, x)) continue;
        Mask comp = X.all_mask();
        for (Mask c : clopens) comp &= mask_test(c, x) ? c : ~c;
        comps.push_back(comp & X.all_mask());
        done |= comp;
    }
    std::sort(comps.begin(), comps.end(), mask_seq_less);
    return comps;
}

// All labeled posets on n points (named like discrete(n)), by brute force
// over generating relations. Test fodder for property checks.
inline std::vector<FiniteSpace> all_posets(int n) {
    std::vector<std::pair<int, int>> slots;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            if (i != j) slots.emplace_back(i, j);
    std::vector<FiniteSpace> out;
    std::vector<std::string> names;
    for (int i = 0; i < n; ++i) names.push_back("x" + std::to_string(i));
    for (std::uint32_t bits = 0; bits < (1u << slots.size()); ++bits) {
        std::vector<std::pair<std::string, std::string>> rel;
        for (std::size_t s = 0; s < slots.size(); ++s)
            if ((bits >> s) & 1)
                rel.emplace_back(names[static_cast<std::size_t>(slots[s].first)],
                                 names[static_cast<std::size_t>(slots[s].second)]);
        try {
            FiniteSpace sp = FiniteSpace::build(names, rel);
            if (std::none_of(out.begin(), out.end(), [&](const FiniteSpace& o) { return o == sp; }))
                out.push_back(std::move(sp));
        } catch (const Error&) {
            // cyclic generating set; skip
        }
    }
    return out;
}

}  // namespace hodist::reference
