#pragma once

#include <algorithm>
#include <cstdint>
#include <memory>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hodist/bits.hpp"
#include "hodist/error.hpp"

namespace hodist {

class FiniteSpace;
struct CoreResult;

// Finite T0 spaces encoded by their specialization order.
//
// Convention, fixed once and used everywhere: x <= y iff x lies in the
// minimal open set of y. Open sets are exactly the down-sets of <=, the
// minimal open neighborhood of x is below(x) = {y : y <= x}, and closed
// sets are the up-sets. All derived operations (products, subspaces,
// normality, connectivity) follow from this single convention.
class FiniteSpace {
public:
    static constexpr int kMaxPoints = 64;

    FiniteSpace() = default;  // the empty space

    // Builds the space from named points and generating relation pairs.
    // Computes the reflexive-transitive closure; rejects duplicate points,
    // unknown identifiers and relation cycles between distinct points (the
    // closure a cycle would create violates antisymmetry, i.e. T0).
    static FiniteSpace build(std::vector<std::string> points,
                             const std::vector<std::pair<std::string, std::string>>& relations) {
        FiniteSpace s;
        if (points.size() > kMaxPoints)
            throw_input("space has " + std::to_string(points.size()) + " points; at most " +
                        std::to_string(kMaxPoints) + " supported");
        s.names_ = std::move(points);
        for (int i = 0; i < static_cast<int>(s.names_.size()); ++i) {
            if (s.names_[i].empty()) throw_input("empty point identifier");
            if (!s.idx_.emplace(s.names_[i], i).second)
                throw_input("duplicate point: " + s.names_[i]);
        }
        int n = s.size();
        s.below_.assign(n, 0);
        for (int i = 0; i < n; ++i) s.below_[i] = mask_bit(i);
        for (const auto& [lo, hi] : relations) {
            int a = s.index(lo);
            int b = s.index(hi);
            s.below_[b] |= mask_bit(a);
        }
        // Transitive closure over the down-set rows.
        bool changed = true;
        while (changed) {
            changed = false;
            for (int y = 0; y < n; ++y) {
                Mask acc = s.below_[y];
                mask_for_each(s.below_[y], [&](int x) { acc |= s.below_[x]; });
                if (acc != s.below_[y]) {
                    s.below_[y] = acc;
                    changed = true;
                }
            }
        }
        s.above_.assign(n, 0);
        for (int y = 0; y < n; ++y)
            mask_for_each(s.below_[y], [&](int x) { s.above_[x] |= mask_bit(y); });
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if (s.leq(x, y) && s.leq(y, x))
                    throw_input("relation cycle between distinct points '" + s.names_[x] +
                                "' and '" + s.names_[y] + "' (not T0)");
        return s;
    }

    static FiniteSpace discrete(int n) {
        std::vector<std::string> pts;
        pts.reserve(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) pts.push_back("x" + std::to_string(i));
        return build(std::move(pts), {});
    }

    static FiniteSpace chain(int n) {
        std::vector<std::string> pts;
        std::vector<std::pair<std::string, std::string>> rel;
        for (int i = 0; i < n; ++i) pts.push_back("c" + std::to_string(i));
        for (int i = 0; i + 1 < n; ++i) rel.emplace_back(pts[i], pts[i + 1]);
        return build(std::move(pts), rel);
    }

    static FiniteSpace point() { return build({"pt"}, {}); }

    // The 4-point finite model weakly equivalent to the circle: two open
    // points a, b under two closed points c, d.
    static FiniteSpace pseudocircle() {
        return build({"a", "b", "c", "d"}, {{"a", "c"}, {"b", "c"}, {"a", "d"}, {"b", "d"}});
    }

    int size() const { return static_cast<int>(names_.size()); }
    const std::string& name(int i) const { return names_[static_cast<std::size_t>(i)]; }
    const std::vector<std::string>& names() const { return names_; }

    int index(std::string_view p) const {
        auto it = idx_.find(std::string(p));
        if (it == idx_.end()) throw_input("unknown point: " + std::string(p));
        return it->second;
    }
    bool has_point(std::string_view p) const { return idx_.count(std::string(p)) > 0; }

    bool leq(int x, int y) const { return mask_test(below_[static_cast<std::size_t>(y)], x); }
    bool comparable(int x, int y) const { return leq(x, y) || leq(y, x); }

    Mask min_open(int x) const { return below_[static_cast<std::size_t>(x)]; }
    Mask closure_of(int x) const { return above_[static_cast<std::size_t>(x)]; }

    Mask all_mask() const {
        int n = size();
        return n == 64 ? ~Mask{0} : (mask_bit(n) - 1);
    }

    Mask down_closure(Mask m) const {
        Mask r = 0;
        mask_for_each(m, [&](int x) { r |= min_open(x); });
        return r;
    }
    Mask up_closure(Mask m) const {
        Mask r = 0;
        mask_for_each(m, [&](int x) { r |= closure_of(x); });
        return r;
    }

    bool is_downset(Mask m) const {
        Mask r = m;
        mask_for_each(m, [&](int x) { r |= min_open(x); });
        return r == m;
    }

    Mask maximal_in(Mask m) const {
        Mask r = 0;
        mask_for_each(m, [&](int x) {
            if ((closure_of(x) & m) == mask_bit(x)) r |= mask_bit(x);
        });
        return r;
    }
    Mask minimal_in(Mask m) const {
        Mask r = 0;
        mask_for_each(m, [&](int x) {
            if ((min_open(x) & m) == mask_bit(x)) r |= mask_bit(x);
        });
        return r;
    }

    // All open sets (down-sets), in canonical order, including the empty set
    // and the whole space. The count can be exponential, so a cap applies.
    std::vector<Mask> opens(std::uint64_t cap = 1u << 20) const {
        // Enumerate ideals along a linear extension: point p may join only
        // once everything strictly below it is in.
        std::vector<int> order(static_cast<std::size_t>(size()));
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
            return mask_count(min_open(a)) < mask_count(min_open(b));
        });
        std::vector<Mask> out;
        struct Frame {
            std::size_t k;
            Mask cur;
        };
        std::vector<Frame> stack{{0, 0}};
        while (!stack.empty()) {
            auto [k, cur] = stack.back();
            stack.pop_back();
            if (k == order.size()) {
                if (out.size() >= cap)
                    throw_guard("open-set enumeration exceeds cap of " + std::to_string(cap));
                out.push_back(cur);
                continue;
            }
            int p = order[k];
            stack.push_back({k + 1, cur});  // exclude p
            if (mask_subset(min_open(p) & ~mask_bit(p), cur))
                stack.push_back({k + 1, cur | mask_bit(p)});  // include p
        }
        std::sort(out.begin(), out.end(), mask_seq_less);
        return out;
    }

    // Product space: points are pairs, ordered componentwise. Point (x,y)
    // gets index x*|Y| + y and name "(x,y)".
    FiniteSpace product(const FiniteSpace& other) const {
        int n = size(), m = other.size();
        if (n * m > kMaxPoints)
            throw_input("product would have " + std::to_string(n * m) + " points; at most " +
                        std::to_string(kMaxPoints) + " supported");
        FiniteSpace p;
        p.names_.reserve(static_cast<std::size_t>(n * m));
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j)
                p.names_.push_back("(" + name(i) + "," + other.name(j) + ")");
        for (int i = 0; i < n * m; ++i) p.idx_.emplace(p.names_[static_cast<std::size_t>(i)], i);
        p.below_.assign(static_cast<std::size_t>(n * m), 0);
        p.above_.assign(static_cast<std::size_t>(n * m), 0);
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < m; ++j) {
                Mask bel = 0;
                mask_for_each(min_open(i), [&](int i2) {
                    mask_for_each(other.min_open(j), [&](int j2) { bel |= mask_bit(i2 * m + j2); });
                });
                p.below_[static_cast<std::size_t>(i * m + j)] = bel;
            }
        for (int y = 0; y < n * m; ++y)
            mask_for_each(p.below_[static_cast<std::size_t>(y)],
                          [&](int x) { p.above_[static_cast<std::size_t>(x)] |= mask_bit(y); });
        return p;
    }

    // Subspace on the given points; order restricted, names kept, points kept
    // in ambient index order.
    FiniteSpace subspace(Mask keep) const {
        if (!mask_subset(keep, all_mask())) throw_input("subspace mask outside the space");
        FiniteSpace s;
        std::vector<int> pts = mask_indices(keep);
        s.names_.reserve(pts.size());
        for (int p : pts) s.names_.push_back(name(p));
        for (int i = 0; i < static_cast<int>(pts.size()); ++i) s.idx_.emplace(s.names_[static_cast<std::size_t>(i)], i);
        s.below_.assign(pts.size(), 0);
        s.above_.assign(pts.size(), 0);
        for (std::size_t i = 0; i < pts.size(); ++i)
            for (std::size_t j = 0; j < pts.size(); ++j)
                if (leq(pts[i], pts[j])) {
                    s.below_[j] |= mask_bit(static_cast<int>(i));
                    s.above_[i] |= mask_bit(static_cast<int>(j));
                }
        return s;
    }

    FiniteSpace subspace(const std::vector<std::string>& pts) const {
        Mask m = 0;
        for (const auto& p : pts) m |= mask_bit(index(p));
        return subspace(m);
    }

    // Connected components of the comparability graph; for finite spaces
    // this coincides with topological (and path-) connectivity.
    std::vector<Mask> components() const {
        int n = size();
        std::vector<int> parent(static_cast<std::size_t>(n));
        std::iota(parent.begin(), parent.end(), 0);
        auto find = [&](int a) {
            while (parent[static_cast<std::size_t>(a)] != a) {
                parent[static_cast<std::size_t>(a)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(a)])];
                a = parent[static_cast<std::size_t>(a)];
            }
            return a;
        };
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y)
                if (comparable(x, y)) parent[static_cast<std::size_t>(find(x))] = find(y);
        std::vector<Mask> comp;
        std::unordered_map<int, std::size_t> slot;
        for (int x = 0; x < n; ++x) {
            int r = find(x);
            auto it = slot.find(r);
            if (it == slot.end()) {
                slot.emplace(r, comp.size());
                comp.push_back(mask_bit(x));
            } else {
                comp[it->second] |= mask_bit(x);
            }
        }
        std::sort(comp.begin(), comp.end(), mask_seq_less);
        return comp;
    }

    int component_of(int x) const {
        // Fixpoint of comparability reachability from x.
        Mask seen = mask_bit(x);
        bool grew = true;
        while (grew) {
            grew = false;
            Mask next = seen;
            mask_for_each(seen, [&](int p) { next |= min_open(p) | closure_of(p); });
            if (next != seen) {
                seen = next;
                grew = true;
            }
        }
        return std::countr_zero(seen);
    }
    bool connected() const { return size() <= 1 || components().size() == 1; }

    struct NormalityResult {
        bool normal = true;
        // On failure: a pair of disjoint closed sets whose smallest open
        // neighborhoods intersect.
        std::optional<std::pair<Mask, Mask>> witness;
    };

    // Pointwise criterion: it suffices to check the closures of single
    // points, since closed sets are unions of point closures and the
    // smallest open neighborhood of a closed set is its down-closure.
    NormalityResult normality() const {
        int n = size();
        std::vector<Mask> hull(static_cast<std::size_t>(n));
        for (int x = 0; x < n; ++x) hull[static_cast<std::size_t>(x)] = down_closure(closure_of(x));
        for (int x = 0; x < n; ++x)
            for (int y = x + 1; y < n; ++y) {
                if (closure_of(x) & closure_of(y)) continue;
                if (hull[static_cast<std::size_t>(x)] & hull[static_cast<std::size_t>(y)])
                    return {false, std::make_pair(closure_of(x), closure_of(y))};
            }
        return {true, std::nullopt};
    }

    struct Report {
        bool t0 = true;  // enforced at construction
        NormalityResult normality;
        std::vector<Mask> components;
    };
    Report report() const { return Report{true, normality(), components()}; }

    // Stong core: repeatedly remove beat points. A point is a beat point if
    // its punctured minimal open has a maximum or its punctured closure has
    // a minimum; removal is a deformation retraction. The result is the
    // smallest space of the same homotopy type; the retraction maps every
    // ambient point to the surviving point it retracts onto.
    CoreResult core() const;

    bool is_contractible() const;

    bool operator==(const FiniteSpace& o) const {
        return names_ == o.names_ && below_ == o.below_;
    }

    std::string set_str(Mask m) const {
        std::string s = "{";
        bool first = true;
        mask_for_each(m, [&](int i) {
            if (!first) s += ",";
            s += name(i);
            first = false;
        });
        return s + "}";
    }

private:
    std::vector<std::string> names_;
    std::vector<Mask> below_;  // below_[y] = {x : x <= y} = minimal open of y
    std::vector<Mask> above_;  // above_[x] = {y : x <= y} = closure of x
    std::unordered_map<std::string, int> idx_;
};

struct CoreResult {
    Mask core_points = 0;
    std::vector<int> retraction;     // ambient index -> ambient index in core
    FiniteSpace core;                // subspace on core_points
    std::vector<int> ambient_of;     // core index -> ambient index
    std::vector<int> core_index_of;  // ambient index -> core index (via retraction)
};

inline CoreResult FiniteSpace::core() const {
    int n = size();
    Mask alive = all_mask();
    std::vector<int> step(static_cast<std::size_t>(n), -1);
    bool removed = true;
    while (removed) {
        removed = false;
        for (int p = 0; p < n && !removed; ++p) {
            if (!mask_test(alive, p)) continue;
            Mask sd = (min_open(p) & alive) & ~mask_bit(p);
            if (sd) {
                Mask mx = 0;
                mask_for_each(sd, [&](int q) {
                    if (mask_subset(sd, min_open(q))) mx |= mask_bit(q);
                });
                if (mx) {
                    step[static_cast<std::size_t>(p)] = std::countr_zero(mx);
                    alive &= ~mask_bit(p);
                    removed = true;
                    continue;
                }
            }
            Mask su = (closure_of(p) & alive) & ~mask_bit(p);
            if (su) {
                Mask mn = 0;
                mask_for_each(su, [&](int q) {
                    if (mask_subset(su, closure_of(q))) mn |= mask_bit(q);
                });
                if (mn) {
                    step[static_cast<std::size_t>(p)] = std::countr_zero(mn);
                    alive &= ~mask_bit(p);
                    removed = true;
                }
            }
        }
    }
    CoreResult r;
    r.core_points = alive;
    r.retraction.assign(static_cast<std::size_t>(n), 0);
    for (int p = 0; p < n; ++p) {
        int q = p;
        while (!mask_test(alive, q)) q = step[static_cast<std::size_t>(q)];
        r.retraction[static_cast<std::size_t>(p)] = q;
    }
    r.core = subspace(alive);
    r.ambient_of = mask_indices(alive);
    r.core_index_of.assign(static_cast<std::size_t>(n), -1);
    for (int i = 0; i < static_cast<int>(r.ambient_of.size()); ++i)
        r.core_index_of[static_cast<std::size_t>(r.ambient_of[static_cast<std::size_t>(i)])] = i;
    for (int p = 0; p < n; ++p)
        r.core_index_of[static_cast<std::size_t>(p)] =
            r.core_index_of[static_cast<std::size_t>(r.retraction[static_cast<std::size_t>(p)])];
    return r;
}

inline bool FiniteSpace::is_contractible() const {
    return size() > 0 && mask_count(core().core_points) == 1;
}

using SpacePtr = std::shared_ptr<const FiniteSpace>;

inline SpacePtr share(FiniteSpace s) { return std::make_shared<const FiniteSpace>(std::move(s)); }

}  // namespace hodist
