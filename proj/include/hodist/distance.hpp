#pragma once

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "hodist/extended_nat.hpp"
#include "hodist/homotopy.hpp"

namespace hodist {

// Exact computation of the homotopic distance D(f,g): the least k such that
// k+1 open sets, on each of which the restrictions of f and g are
// homotopic, cover the domain; infinity when even the union of all such
// "good" opens misses a point.
//
// Goodness is monotone (an open subset of a good open is good), so the
// search space collapses to the maximal good opens: the engine walks the
// ideal lattice top-down through the not-good region, then runs
// branch-and-bound set cover over the maximal good opens. A plain
// exhaustive cover search over all good opens is kept as a reference
// implementation.

namespace detail {

// Maximal elements of a monotone-decreasing predicate over the ideal
// lattice of X. `is_good` is consulted through a memo; the walk visits the
// not-good region plus its lower boundary only.
inline std::vector<Mask> maximal_good_ideals(const FiniteSpace& X,
                                             const std::function<bool(Mask)>& is_good,
                                             std::uint64_t visit_cap) {
    std::unordered_map<Mask, bool> memo;
    auto good = [&](Mask m) {
        auto it = memo.find(m);
        if (it != memo.end()) return it->second;
        bool g = is_good(m);
        memo.emplace(m, g);
        return g;
    };

    Mask full = X.all_mask();
    if (good(full)) return {full};

    std::vector<Mask> candidates;
    std::unordered_set<Mask> visited{full};
    std::vector<Mask> stack{full};
    while (!stack.empty()) {
        Mask j = stack.back();
        stack.pop_back();
        mask_for_each(X.maximal_in(j), [&](int m) {
            Mask child = j & ~mask_bit(m);
            if (!visited.insert(child).second) return;
            if (visited.size() > visit_cap)
                throw_guard("good-open search visited more than " + std::to_string(visit_cap) +
                            " open sets");
            if (good(child))
                candidates.push_back(child);
            else
                stack.push_back(child);
        });
    }

    // Keep candidates all of whose covers in the ideal lattice are not good.
    std::vector<Mask> maximal;
    std::unordered_set<Mask> kept;
    for (Mask j : candidates) {
        bool is_max = true;
        for (int p = 0; p < X.size() && is_max; ++p) {
            if (mask_test(j, p)) continue;
            if (mask_subset(X.min_open(p) & ~mask_bit(p), j) && good(j | mask_bit(p))) is_max = false;
        }
        if (is_max && kept.insert(j).second) maximal.push_back(j);
    }
    std::sort(maximal.begin(), maximal.end(), mask_seq_less);
    return maximal;
}

struct CoverSearch {
    const std::vector<Mask>& sets;  // canonical order, union covers universe
    Mask universe;

    // Exact minimum cover size via branch-and-bound: greedy upper bound,
    // uncovered-count lower bound, branching on the least uncovered point.
    int min_cover_size() const {
        int best = greedy_bound();
        descend(0, universe, best);
        return best;
    }

    int greedy_bound() const {
        Mask uncovered = universe;
        int k = 0;
        while (uncovered) {
            int best_gain = 0;
            Mask best_set = 0;
            for (Mask s : sets) {
                int gain = mask_count(s & uncovered);
                if (gain > best_gain) {
                    best_gain = gain;
                    best_set = s;
                }
            }
            uncovered &= ~best_set;
            ++k;
        }
        return k;
    }

    void descend(int depth, Mask uncovered, int& best) const {
        if (!uncovered) {
            best = std::min(best, depth);
            return;
        }
        int max_gain = 0;
        for (Mask s : sets) max_gain = std::max(max_gain, mask_count(s & uncovered));
        if (max_gain == 0) return;
        int lower = (mask_count(uncovered) + max_gain - 1) / max_gain;
        if (depth + lower >= best) return;
        int point = std::countr_zero(uncovered);
        for (Mask s : sets)
            if (mask_test(s, point)) descend(depth + 1, uncovered & ~s, best);
    }

    // Lexicographically least cover of exactly `size` sets, in canonical set
    // order. The ascending-index walk yields the least combination first;
    // the only pruning discards prefixes that cannot cover at all.
    std::optional<std::vector<Mask>> lex_least_cover(int size) const {
        std::vector<Mask> suffix_union(sets.size() + 1, 0);
        for (std::size_t i = sets.size(); i-- > 0;)
            suffix_union[i] = suffix_union[i + 1] | sets[i];
        std::vector<int> pick;
        if (walk(0, universe, size, suffix_union, pick)) {
            std::vector<Mask> out;
            out.reserve(pick.size());
            for (int i : pick) out.push_back(sets[static_cast<std::size_t>(i)]);
            return out;
        }
        return std::nullopt;
    }

    bool walk(std::size_t from, Mask uncovered, int slots, const std::vector<Mask>& suffix_union,
              std::vector<int>& pick) const {
        if (slots == 0) return !uncovered;
        for (std::size_t i = from; i + static_cast<std::size_t>(slots) <= sets.size(); ++i) {
            if (uncovered & ~(sets[i] | suffix_union[i + 1])) continue;
            pick.push_back(static_cast<int>(i));
            if (walk(i + 1, uncovered & ~sets[i], slots - 1, suffix_union, pick)) return true;
            pick.pop_back();
        }
        return false;
    }
};

}  // namespace detail

// The maximal good opens for the pair (f, g): the antichain of inclusion-
// maximal open sets on which the restrictions are homotopic. Every good
// open is contained in some member.
struct GoodOpenFamily {
    std::vector<Mask> maximal;  // canonical order
    Mask union_mask = 0;
};

inline GoodOpenFamily good_open_family(const ContinuousMap& f, const ContinuousMap& g,
                                       const Limits& limits = {},
                                       const HomotopyOptions& opts = {}) {
    if (!(*f.dom == *g.dom) || !(*f.cod == *g.cod))
        throw_input("good opens require a shared domain and codomain");
    const FiniteSpace& X = *f.dom;
    auto is_good = [&](Mask U) {
        if (!U) return true;
        return are_homotopic(restrict_map(f, U), restrict_map(g, U), limits, opts);
    };
    GoodOpenFamily fam;
    fam.maximal = detail::maximal_good_ideals(X, is_good, limits.max_opens);
    for (Mask m : fam.maximal) fam.union_mask |= m;
    return fam;
}

struct CoverCertificate {
    std::vector<Mask> opens;  // canonical order; union is the whole domain
};

struct DistanceResult {
    ExtendedNat distance;
    std::optional<CoverCertificate> certificate;  // absent iff distance is infinite
};

namespace detail {

inline DistanceResult min_cover_result(const FiniteSpace& X, const std::vector<Mask>& maximal) {
    Mask full = X.all_mask();
    if (full == 0) return {ExtendedNat(0), CoverCertificate{{Mask{0}}}};
    Mask covered = 0;
    for (Mask m : maximal) covered |= m;
    if (covered != full) return {ExtendedNat::infinity(), std::nullopt};
    detail::CoverSearch search{maximal, full};
    int size = search.min_cover_size();
    auto cert = search.lex_least_cover(size);
    return {ExtendedNat(static_cast<std::uint64_t>(size - 1)),
            CoverCertificate{std::move(*cert)}};
}

}  // namespace detail

inline DistanceResult homotopic_distance(const ContinuousMap& f, const ContinuousMap& g,
                                         const Limits& limits = {},
                                         const HomotopyOptions& opts = {}) {
    GoodOpenFamily fam = good_open_family(f, g, limits, opts);
    return detail::min_cover_result(*f.dom, fam.maximal);
}

// ---------------------------------------------------------------------------
// Derived invariants.

enum class CatMethod { Cover, Dist, Incl };

struct CatResult {
    ExtendedNat value;
    std::optional<CoverCertificate> certificate;
    std::optional<std::string> warning;
};

// LS-category. `Cover` is the open-cover definition (each member's inclusion
// null-homotopic to some constant, so it is meaningful on disconnected
// spaces); `Dist` is D(Id, const_basepoint); `Incl` is D(i1, i2) for the two
// axis inclusions X -> X×X. The three agree on connected spaces; the
// distance-based ones get a warning on disconnected input, where the
// identification is not claimed.
inline CatResult cat(const SpacePtr& X, CatMethod method, std::optional<int> basepoint,
                     const Limits& limits = {}, const HomotopyOptions& opts = {}) {
    CatResult res;
    if (method == CatMethod::Cover) {
        auto is_good = [&](Mask U) { return null_homotopic_inclusion(X, U, limits, opts); };
        auto maximal = detail::maximal_good_ideals(*X, is_good, limits.max_opens);
        auto cover = detail::min_cover_result(*X, maximal);
        res.value = cover.distance;
        res.certificate = std::move(cover.certificate);
        return res;
    }
    if (!basepoint) throw_input("cat method needs a basepoint");
    if (*basepoint < 0 || *basepoint >= X->size()) throw_input("basepoint out of range");
    if (!X->connected())
        res.warning = "domain is disconnected; the distance identities are only claimed for "
                      "path-connected spaces";
    DistanceResult d;
    if (method == CatMethod::Dist) {
        d = homotopic_distance(identity_map(X), constant_map(X, X, *basepoint), limits, opts);
    } else {
        auto P = ProductSpace::make(X, X);
        d = homotopic_distance(P.axis_inclusion(0, *basepoint), P.axis_inclusion(1, *basepoint),
                               limits, opts);
    }
    res.value = d.distance;
    res.certificate = std::move(d.certificate);
    return res;
}

// Topological complexity as the homotopic distance between the two
// projections X×X -> X.
inline DistanceResult tc(const SpacePtr& X, const Limits& limits = {},
                         const HomotopyOptions& opts = {}) {
    auto P = ProductSpace::make(X, X);
    try {
        return homotopic_distance(P.projection(0), P.projection(1), limits, opts);
    } catch (const Error& e) {
        if (e.kind() == Error::Kind::SizeGuard)
            throw_guard(std::string("good-open homotopy checks on the product: ") + e.what());
        throw;
    }
}

// ---------------------------------------------------------------------------
// Pairwise distances over a whole map space.

// D is a homotopy invariant in both arguments (good opens only see the
// restriction's class), so the matrix is computed per class pair and
// replicated across members. Representative independence is covered by
// tests that recompute with random alternates.
struct MapSpaceMetric {
    std::vector<ContinuousMap> maps;
    HomotopyPartition partition;
    std::vector<std::vector<ExtendedNat>> class_dist;  // class pair -> D
    std::vector<std::vector<ExtendedNat>> dist;        // map pair -> D

    std::size_t size() const { return maps.size(); }
};

inline MapSpaceMetric map_space_metric(const SpacePtr& X, const SpacePtr& Y,
                                       const Limits& limits = {},
                                       const HomotopyOptions& opts = {}) {
    MapSpaceMetric m;
    m.maps = continuous_maps(X, Y, limits);
    m.partition = homotopy_classes(m.maps);
    std::size_t c = m.partition.blocks.size();
    m.class_dist.assign(c, std::vector<ExtendedNat>(c, ExtendedNat(0)));
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = i; j < c; ++j) {
            auto d = homotopic_distance(m.maps[static_cast<std::size_t>(m.partition.representative(static_cast<int>(i)))],
                                        m.maps[static_cast<std::size_t>(m.partition.representative(static_cast<int>(j)))],
                                        limits, opts);
            m.class_dist[i][j] = d.distance;
            m.class_dist[j][i] = d.distance;
        }
    std::size_t n = m.maps.size();
    m.dist.assign(n, std::vector<ExtendedNat>(n, ExtendedNat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            m.dist[i][j] = m.class_dist[static_cast<std::size_t>(m.partition.class_of[i])]
                                       [static_cast<std::size_t>(m.partition.class_of[j])];
    return m;
}

// ---------------------------------------------------------------------------
// Pseudometric axioms over Map(X, Y).

struct AxiomReport {
    std::size_t n_maps = 0;
    std::size_t n_classes = 0;
    bool m1_ok = true;
    bool m2_ok = true;
    bool domain_normal = true;  // the triangle inequality is only asserted when true
    bool m3_observed_holds = true;
    std::optional<std::array<int, 3>> m3_witness;  // representative map indices
    std::vector<std::vector<ExtendedNat>> dist;    // full matrix
};

inline AxiomReport axiom_report(const SpacePtr& X, const SpacePtr& Y, const Limits& limits = {},
                                const HomotopyOptions& opts = {}) {
    AxiomReport rep;
    rep.domain_normal = X->normality().normal;
    auto maps = continuous_maps(X, Y, limits);
    auto part = homotopy_classes(maps);
    rep.n_maps = maps.size();
    rep.n_classes = part.blocks.size();
    std::size_t c = part.blocks.size();
    // Both directions are computed independently so the symmetry verdict is a
    // real check on the engine, not a reflection of how the matrix is stored.
    std::vector<std::vector<ExtendedNat>> cd(c, std::vector<ExtendedNat>(c, ExtendedNat(0)));
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j)
            cd[i][j] = homotopic_distance(maps[static_cast<std::size_t>(part.representative(static_cast<int>(i)))],
                                          maps[static_cast<std::size_t>(part.representative(static_cast<int>(j)))],
                                          limits, opts)
                           .distance;
    for (std::size_t i = 0; i < c && rep.m1_ok; ++i)
        if (cd[i][i] != ExtendedNat(0)) rep.m1_ok = false;
    for (std::size_t i = 0; i < c && rep.m2_ok; ++i)
        for (std::size_t j = 0; j < c && rep.m2_ok; ++j)
            if (cd[i][j] != cd[j][i]) rep.m2_ok = false;
    for (std::size_t a = 0; a < c && rep.m3_observed_holds; ++a)
        for (std::size_t b = 0; b < c && rep.m3_observed_holds; ++b)
            for (std::size_t k = 0; k < c; ++k)
                if (cd[a][b] + cd[b][k] < cd[a][k]) {
                    rep.m3_observed_holds = false;
                    rep.m3_witness = {part.representative(static_cast<int>(a)),
                                      part.representative(static_cast<int>(b)),
                                      part.representative(static_cast<int>(k))};
                    break;
                }
    std::size_t n = maps.size();
    rep.dist.assign(n, std::vector<ExtendedNat>(n, ExtendedNat(0)));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            rep.dist[i][j] = cd[static_cast<std::size_t>(part.class_of[i])]
                               [static_cast<std::size_t>(part.class_of[j])];
    return rep;
}

}  // namespace hodist
