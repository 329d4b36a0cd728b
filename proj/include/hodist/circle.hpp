#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hodist/error.hpp"
#include "hodist/extended_nat.hpp"
#include "hodist/rational.hpp"

namespace hodist {

// Symbolic model of the map space of circle self-maps modulo homotopy.
// Homotopy classes are indexed by the degree (an integer); the class-level
// distance is 0 between equal degrees and 1 otherwise, which makes the
// quotient topology discrete on classes. The infinite carrier is never
// materialized: balls and covers are handled through symbolic set
// descriptions.

// Reduced LS-category of the circle; the upper bound that pins every
// distinct-degree distance to exactly 1.
inline constexpr std::uint64_t kCircleCategory = 1;

// A piecewise-linear circle self-map: entry i is a vertex position on the
// target subdivision, entries are read cyclically, and consecutive entries
// must be equal or adjacent on the target circle.
struct PLCircleMap {
    std::int64_t subdivision = 0;      // number of target vertices, >= 3
    std::vector<std::int64_t> images;  // positions in [0, subdivision)
};

// Signed winding number of the traversal.
inline std::int64_t degree(const PLCircleMap& m) {
    if (m.subdivision < 3) throw_input("circle subdivision must be at least 3");
    if (m.images.empty()) throw_input("a circle map needs at least one vertex image");
    for (auto v : m.images)
        if (v < 0 || v >= m.subdivision)
            throw_input("vertex image " + std::to_string(v) + " outside the subdivision");
    std::int64_t total = 0;
    std::size_t L = m.images.size();
    for (std::size_t i = 0; i < L; ++i) {
        std::int64_t a = m.images[i];
        std::int64_t b = m.images[(i + 1) % L];
        std::int64_t step = (b - a) % m.subdivision;
        if (step < 0) step += m.subdivision;
        if (step == 1) {
            total += 1;
        } else if (step == m.subdivision - 1) {
            total -= 1;
        } else if (step != 0) {
            throw_input("vertex images " + std::to_string(a) + " -> " + std::to_string(b) +
                        " are not adjacent on the target circle");
        }
    }
    // A cyclic walk of unit steps returns to its start, so the total is a
    // multiple of the subdivision.
    return total / m.subdivision;
}

// Composition f ∘ g; g must land on f's sample points, i.e. f has one image
// per vertex of g's target subdivision.
inline PLCircleMap compose(const PLCircleMap& f, const PLCircleMap& g) {
    if (static_cast<std::int64_t>(f.images.size()) != g.subdivision)
        throw_input("composition needs the outer map sampled on the inner map's target");
    PLCircleMap h;
    h.subdivision = f.subdivision;
    h.images.reserve(g.images.size());
    for (auto v : g.images) h.images.push_back(f.images[static_cast<std::size_t>(v)]);
    return h;
}

// Class-level homotopic distance between degrees: 0 iff equal, otherwise
// exactly the circle's category.
inline ExtendedNat circle_distance(std::int64_t n, std::int64_t m) {
    return n == m ? ExtendedNat(0) : ExtendedNat(kCircleCategory);
}

// Finite description of the subsets of the (infinite) map space that the
// model's balls and covers produce.
struct SymbolicSet {
    enum class Kind { Singleton, All, ConstantsClass };
    Kind kind = Kind::All;
    std::int64_t degree = 0;  // meaningful for Singleton
    std::optional<std::string> note;

    static SymbolicSet singleton(std::int64_t n) { return {Kind::Singleton, n, std::nullopt}; }
    static SymbolicSet all() { return {Kind::All, 0, std::nullopt}; }
    static SymbolicSet constants_class() { return {Kind::ConstantsClass, 0, std::nullopt}; }

    bool covers_degree(std::int64_t d) const {
        switch (kind) {
            case Kind::All: return true;
            case Kind::Singleton: return degree == d;
            case Kind::ConstantsClass: return d == 0;
        }
        return false;
    }

    std::string str() const {
        switch (kind) {
            case Kind::All: return "all";
            case Kind::Singleton: return "{deg " + std::to_string(degree) + "}";
            case Kind::ConstantsClass: return "B_{1/2}(c)";
        }
        return "?";
    }
};

// Ball around the degree-n class: the class itself for radius <= 1, the
// whole space for radius > 1. The degree-0 class is the class of the
// constant maps; the returned note records that reading.
inline SymbolicSet circle_ball(std::int64_t n, const Rational& r) {
    if (!r.positive()) throw_input("ball radius must be positive");
    if (r.gt_int(1)) return SymbolicSet::all();
    SymbolicSet s = SymbolicSet::singleton(n);
    if (n == 0)
        s.note = "degree-0 class: the constant maps, read at class level "
                 "(non-constant null-homotopic representatives included)";
    return s;
}

// Report on the canonical cover {singleton degree classes} ∪ {radius-1/2
// ball of the constants}: the countable basis it exhibits, and a witness
// class showing no finite subfamily covers.
struct CircleBasisReport {
    // basis schema: one singleton per integer degree plus the radius-1/2
    // constants-class ball
    std::string basis_singletons = "{ {f_n} : n in Z }";
    std::string basis_extra = "B_{1/2}(c)";
    Rational constants_ball_radius{1, 2};
    bool classes_topology_discrete = true;
    bool second_countable = true;
    std::int64_t uncovered_degree = 0;  // valid witness for the given subfamily
};

inline CircleBasisReport basis_and_compactness(const std::vector<SymbolicSet>& subfamily) {
    for (const auto& s : subfamily)
        if (s.kind == SymbolicSet::Kind::All)
            throw_input("subfamily member " + s.str() + " is not in the canonical cover");
    CircleBasisReport rep;
    // Scan degrees 0, 1, 2, ...; a finite subfamily covers finitely many
    // classes, so the scan terminates with an uncovered witness.
    for (std::int64_t d = 0;; ++d) {
        bool covered = false;
        for (const auto& s : subfamily)
            if (s.covers_degree(d)) {
                covered = true;
                break;
            }
        if (!covered) {
            rep.uncovered_degree = d;
            return rep;
        }
    }
}

}  // namespace hodist
