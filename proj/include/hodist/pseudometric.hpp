#pragma once

#include <algorithm>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "hodist/bits.hpp"
#include "hodist/distance.hpp"
#include "hodist/rational.hpp"

namespace hodist {

// The pseudometric space the distance induces on an enumerated map space,
// and the topology its balls generate.

struct PseudometricSpace {
    SpacePtr dom, cod;
    std::vector<ContinuousMap> carrier;
    std::vector<int> enum_index;  // carrier slot -> index in the full enumeration
    std::vector<std::vector<ExtendedNat>> dist;
    bool quotiented = false;
    HomotopyPartition partition;  // partition of the full enumeration

    std::size_t size() const { return carrier.size(); }

    // Largest finite distance (0 when none); integer ball thresholds beyond
    // it add nothing.
    std::uint64_t max_finite() const {
        std::uint64_t m = 0;
        for (const auto& row : dist)
            for (auto d : row)
                if (!d.is_infinite()) m = std::max(m, d.value());
        return m;
    }

    // Members at distance <= t from the center.
    DynBits within(int center, std::uint64_t t) const {
        DynBits b(size());
        for (std::size_t j = 0; j < size(); ++j) {
            auto d = dist[static_cast<std::size_t>(center)][j];
            if (!d.is_infinite() && d.value() <= t) b.set(j);
        }
        return b;
    }
};

// Carrier = all maps, or one representative per homotopy class when
// `quotient` is set (making the distance an extended semimetric there).
inline PseudometricSpace induced_space(const SpacePtr& X, const SpacePtr& Y, bool quotient,
                                       const Limits& limits = {},
                                       const HomotopyOptions& opts = {}) {
    auto metric = map_space_metric(X, Y, limits, opts);
    PseudometricSpace ps;
    ps.dom = X;
    ps.cod = Y;
    ps.quotiented = quotient;
    ps.partition = metric.partition;
    if (!quotient) {
        ps.carrier = std::move(metric.maps);
        ps.enum_index.resize(ps.carrier.size());
        std::iota(ps.enum_index.begin(), ps.enum_index.end(), 0);
        ps.dist = std::move(metric.dist);
        return ps;
    }
    std::size_t c = metric.partition.blocks.size();
    ps.carrier.reserve(c);
    for (std::size_t i = 0; i < c; ++i) {
        int rep = metric.partition.representative(static_cast<int>(i));
        ps.enum_index.push_back(rep);
        ps.carrier.push_back(metric.maps[static_cast<std::size_t>(rep)]);
    }
    ps.dist.assign(c, std::vector<ExtendedNat>(c, ExtendedNat(0)));
    for (std::size_t i = 0; i < c; ++i)
        for (std::size_t j = 0; j < c; ++j) ps.dist[i][j] = metric.class_dist[i][j];
    return ps;
}

struct Ball {
    int center;
    Rational radius;
    DynBits members;
};

// Open ball of positive rational radius. Distances are integers, so members
// are exactly those at distance <= ceil(r)-1; in particular any radius in
// (0,1] yields the homotopy class of the center.
inline Ball ball(const PseudometricSpace& M, int center, const Rational& r) {
    if (!r.positive()) throw_input("ball radius must be positive");
    if (center < 0 || static_cast<std::size_t>(center) >= M.size())
        throw_input("ball center out of range");
    std::uint64_t t = static_cast<std::uint64_t>(r.ceil() - 1);
    return Ball{center, r, M.within(center, t)};
}

// A topology on a finite carrier, stored as the minimal open neighborhood of
// each element (its specialization preorder). This determines every open
// set — S is open iff it contains the minimal neighborhood of each of its
// members — without materializing the possibly-exponential open family.
class FiniteTopology {
public:
    FiniteTopology() = default;

    static FiniteTopology from_subbasis(std::size_t n, const std::vector<DynBits>& subbasis) {
        FiniteTopology t;
        t.min_open_.assign(n, DynBits::full(n));
        for (const auto& s : subbasis)
            for (std::size_t x = 0; x < n; ++x)
                if (s.test(x)) t.min_open_[x] &= s;
        return t;
    }

    std::size_t size() const { return min_open_.size(); }
    const DynBits& min_open(std::size_t x) const { return min_open_[x]; }
    const std::vector<DynBits>& min_basis() const { return min_open_; }

    bool is_open(const DynBits& s) const {
        for (std::size_t x = 0; x < size(); ++x)
            if (s.test(x) && !min_open_[x].subset_of(s)) return false;
        return true;
    }
    bool is_clopen(const DynBits& s) const { return is_open(s) && is_open(s.complement()); }

    bool indiscrete() const {
        for (const auto& m : min_open_)
            if (m.count() != size()) return false;
        return true;
    }

    std::vector<DynBits> components() const {
        std::size_t n = size();
        std::vector<int> parent(n);
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int a) {
            while (parent[static_cast<std::size_t>(a)] != a) {
                parent[static_cast<std::size_t>(a)] =
                    parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
                a = parent[static_cast<std::size_t>(a)];
            }
            return a;
        };
        for (std::size_t x = 0; x < n; ++x)
            min_open_[x].for_each([&](std::size_t y) {
                parent[static_cast<std::size_t>(find(static_cast<int>(x)))] =
                    find(static_cast<int>(y));
            });
        std::vector<DynBits> comps;
        std::vector<int> slot(n, -1);
        for (std::size_t x = 0; x < n; ++x) {
            int r = find(static_cast<int>(x));
            if (slot[static_cast<std::size_t>(r)] == -1) {
                slot[static_cast<std::size_t>(r)] = static_cast<int>(comps.size());
                comps.emplace_back(n);
            }
            comps[static_cast<std::size_t>(slot[static_cast<std::size_t>(r)])].set(x);
        }
        std::sort(comps.begin(), comps.end(),
                  [](const DynBits& a, const DynBits& b) { return a.seq_less(b); });
        return comps;
    }
    bool connected() const { return size() <= 1 || components().size() == 1; }

    // Subspace topology on S, re-indexed along ascending members of S;
    // `global_of` receives the member list when wanted.
    FiniteTopology subspace(const DynBits& s, std::vector<std::size_t>* global_of = nullptr) const {
        auto members = s.indices();
        if (global_of) *global_of = members;
        std::vector<std::size_t> local(size(), 0);
        for (std::size_t i = 0; i < members.size(); ++i) local[members[i]] = i;
        FiniteTopology t;
        t.min_open_.assign(members.size(), DynBits(members.size()));
        for (std::size_t i = 0; i < members.size(); ++i) {
            DynBits cut = min_open_[members[i]] & s;
            cut.for_each([&](std::size_t g) { t.min_open_[i].set(local[g]); });
        }
        return t;
    }

    // The full open family (all unions of minimal neighborhoods), canonical
    // order. Exponential in general, hence the cap.
    std::vector<DynBits> materialize(std::uint64_t cap = 1u << 20) const {
        std::size_t n = size();
        // Collapse elements with identical minimal neighborhoods, then
        // enumerate down-sets of the quotient order.
        std::vector<std::size_t> group_of(n, 0);
        std::vector<std::size_t> rep;
        for (std::size_t x = 0; x < n; ++x) {
            bool found = false;
            for (std::size_t r = 0; r < rep.size() && !found; ++r)
                if (min_open_[rep[r]] == min_open_[x]) {
                    group_of[x] = r;
                    found = true;
                }
            if (!found) {
                group_of[x] = rep.size();
                rep.push_back(x);
            }
        }
        std::size_t g = rep.size();
        if (g > 63) throw_guard("topology materialization with more than 63 distinct neighborhoods");
        std::vector<Mask> gbelow(g, 0);  // groups whose rep lies in min_open of this group's rep
        for (std::size_t a = 0; a < g; ++a) {
            gbelow[a] = mask_bit(static_cast<int>(a));
            for (std::size_t b = 0; b < g; ++b)
                if (min_open_[rep[a]].test(rep[b])) gbelow[a] |= mask_bit(static_cast<int>(b));
        }
        std::vector<std::size_t> order(g);
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
            return mask_count(gbelow[a]) < mask_count(gbelow[b]);
        });
        std::vector<Mask> ideals;
        struct Frame {
            std::size_t k;
            Mask cur;
        };
        std::vector<Frame> stack{{0, 0}};
        while (!stack.empty()) {
            auto [k, cur] = stack.back();
            stack.pop_back();
            if (k == g) {
                if (ideals.size() >= cap)
                    throw_guard("topology materialization exceeds cap of " + std::to_string(cap));
                ideals.push_back(cur);
                continue;
            }
            std::size_t p = order[k];
            stack.push_back({k + 1, cur});
            if (mask_subset(gbelow[p] & ~mask_bit(static_cast<int>(p)), cur))
                stack.push_back({k + 1, cur | mask_bit(static_cast<int>(p))});
        }
        std::vector<DynBits> out;
        out.reserve(ideals.size());
        for (Mask id : ideals) {
            DynBits s(n);
            for (std::size_t x = 0; x < n; ++x)
                if (mask_test(id, static_cast<int>(group_of[x]))) s.set(x);
            out.push_back(std::move(s));
        }
        std::sort(out.begin(), out.end(), [](const DynBits& a, const DynBits& b) { return a.seq_less(b); });
        return out;
    }

private:
    std::vector<DynBits> min_open_;
};

// The topology generated by the open balls: since the distance takes values
// in N ∪ {∞}, integer thresholds 0..max_finite exhaust all balls. With a
// subset, the subspace topology on it.
inline FiniteTopology generate_topology(const PseudometricSpace& M,
                                        std::optional<DynBits> subset = std::nullopt) {
    std::vector<DynBits> balls;
    std::uint64_t tmax = M.max_finite();
    for (std::size_t c = 0; c < M.size(); ++c)
        for (std::uint64_t t = 0; t <= tmax; ++t) balls.push_back(M.within(static_cast<int>(c), t));
    FiniteTopology full = FiniteTopology::from_subbasis(M.size(), balls);
    if (!subset) return full;
    if (subset->size() != M.size()) throw_input("subspace carrier size mismatch");
    return full.subspace(*subset);
}

// ---------------------------------------------------------------------------
// Verdicts for the topological statements checked on every induced space.

struct PropertyReport {
    // (a) every ball of radius <= 1 carries the indiscrete subspace topology
    bool small_balls_indiscrete = true;
    // (b) every ball of radius > 1 that properly contains the unit ball is
    //     disconnected, with the unit ball clopen in it; the closure of the
    //     unit ball (via distance-to-set minima) equals the unit ball
    bool large_balls_disconnected = true;
    bool large_ball_case_applicable = false;  // false marks (b) vacuous
    // (c) whether the whole induced topology is indiscrete
    bool indiscrete = true;
    // (d) not indiscrete implies disconnected, with an explicit clopen
    //     separation
    bool disconnected_when_not_indiscrete = true;
    std::optional<std::pair<DynBits, DynBits>> separation;
    // elements at mutual distance ∞ always land in different components
    bool infinite_pairs_separated = true;
    // finite carriers are compact; the interesting (non-)compactness
    // questions concern infinite map spaces and live in the circle model
    bool compact = true;
    std::vector<std::string> failures;
};

inline PropertyReport property_report(const PseudometricSpace& M) {
    PropertyReport rep;
    std::size_t n = M.size();
    if (n == 0) return rep;
    FiniteTopology topo = generate_topology(M);
    std::uint64_t tmax = M.max_finite();

    for (std::size_t c = 0; c < n; ++c) {
        DynBits b1 = M.within(static_cast<int>(c), 0);
        // (a): subspace of the unit ball is indiscrete
        if (!topo.subspace(b1).indiscrete()) {
            rep.small_balls_indiscrete = false;
            rep.failures.push_back("unit ball at carrier index " + std::to_string(c) +
                                   " is not indiscrete");
        }
        // (b): for each larger threshold with strictly more members
        for (std::uint64_t t = 1; t <= tmax; ++t) {
            DynBits br = M.within(static_cast<int>(c), t);
            if (br == b1) continue;
            rep.large_ball_case_applicable = true;
            std::vector<std::size_t> global_of;
            FiniteTopology sub = topo.subspace(br, &global_of);
            DynBits b1_local(global_of.size());
            for (std::size_t i = 0; i < global_of.size(); ++i)
                if (b1.test(global_of[i])) b1_local.set(i);
            bool ok = !sub.connected() && sub.is_clopen(b1_local);
            // closure via distance-to-set minima must give back the ball
            for (std::size_t i = 0; i < global_of.size() && ok; ++i) {
                if (b1_local.test(i)) continue;
                ExtendedNat dmin = ExtendedNat::infinity();
                b1.for_each([&](std::size_t g) {
                    dmin = std::min(dmin, M.dist[g][global_of[i]]);
                });
                if (dmin == ExtendedNat(0)) ok = false;
            }
            if (!ok) {
                rep.large_balls_disconnected = false;
                rep.failures.push_back("ball of threshold " + std::to_string(t) +
                                       " at carrier index " + std::to_string(c) +
                                       " fails the separation checks");
            }
        }
    }

    rep.indiscrete = topo.indiscrete();
    if (!rep.indiscrete) {
        // Explicit separation: the unit ball of the first element with a
        // proper unit ball, against the union of the unit balls of the rest.
        std::size_t pick = n;
        for (std::size_t c = 0; c < n && pick == n; ++c)
            if (M.within(static_cast<int>(c), 0).count() != n) pick = c;
        DynBits u = M.within(static_cast<int>(pick), 0);
        DynBits v(n);
        for (std::size_t h = 0; h < n; ++h)
            if (!u.test(h)) v |= M.within(static_cast<int>(h), 0);
        bool sep = topo.is_open(u) && topo.is_open(v) && !u.intersects(v) &&
                   (u | v) == DynBits::full(n) && u.any() && v.any();
        if (!sep || topo.connected()) {
            rep.disconnected_when_not_indiscrete = false;
            rep.failures.push_back("no clopen separation found despite a non-indiscrete topology");
        } else {
            rep.separation = std::make_pair(u, v);
        }
    }

    auto comps = topo.components();
    auto comp_of = [&](std::size_t x) {
        for (std::size_t c = 0; c < comps.size(); ++c)
            if (comps[c].test(x)) return c;
        return comps.size();
    };
    for (std::size_t i = 0; i < n && rep.infinite_pairs_separated; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (M.dist[i][j].is_infinite() && comp_of(i) == comp_of(j)) {
                rep.infinite_pairs_separated = false;
                rep.failures.push_back("carrier indices " + std::to_string(i) + "," +
                                       std::to_string(j) +
                                       " are at distance inf but share a component");
                break;
            }
    return rep;
}

}  // namespace hodist
