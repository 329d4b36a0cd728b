#pragma once

#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "hodist/circle.hpp"
#include "hodist/continuous_map.hpp"
#include "hodist/finite_space.hpp"

namespace hodist::io {

using nlohmann::json;

inline json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw_input("cannot open file: " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw_input("malformed JSON in " + path.string() + ": " + e.what());
    }
    return j;
}

// Space files: {"points": [names...], "le": [[lo, hi]...]} with the
// relation pairs generating the order (closure computed on load).
inline FiniteSpace space_from_json(const json& j) {
    if (!j.is_object() || !j.contains("points") || !j["points"].is_array())
        throw_input("space file needs a \"points\" array");
    std::vector<std::string> points;
    for (const auto& p : j["points"]) {
        if (!p.is_string()) throw_input("point identifiers must be strings");
        points.push_back(p.get<std::string>());
    }
    std::vector<std::pair<std::string, std::string>> rel;
    if (j.contains("le")) {
        if (!j["le"].is_array()) throw_input("\"le\" must be an array of pairs");
        for (const auto& pr : j["le"]) {
            if (!pr.is_array() || pr.size() != 2 || !pr[0].is_string() || !pr[1].is_string())
                throw_input("\"le\" entries must be [lo, hi] name pairs");
            rel.emplace_back(pr[0].get<std::string>(), pr[1].get<std::string>());
        }
    }
    return FiniteSpace::build(std::move(points), rel);
}

inline FiniteSpace load_space(const std::filesystem::path& path) {
    try {
        return space_from_json(read_json_file(path));
    } catch (const Error& e) {
        if (e.kind() == Error::Kind::InvalidInput)
            throw_input(path.string() + ": " + e.what());
        throw;
    }
}

// Canonical form: points sorted, "le" listing every strict pair of the
// closure sorted by (lo, hi). Loading and saving reproduces the file
// byte-for-byte once it is in canonical form.
inline std::string space_to_canonical_json(const FiniteSpace& s) {
    std::vector<std::string> points = s.names();
    std::sort(points.begin(), points.end());
    std::vector<std::pair<std::string, std::string>> pairs;
    for (int y = 0; y < s.size(); ++y)
        mask_for_each(s.min_open(y) & ~mask_bit(y),
                      [&](int x) { pairs.emplace_back(s.name(x), s.name(y)); });
    std::sort(pairs.begin(), pairs.end());
    json j;
    j["points"] = points;
    j["le"] = json::array();
    for (const auto& [lo, hi] : pairs) j["le"].push_back(json::array({lo, hi}));
    return j.dump(2) + "\n";
}

inline void save_space(const FiniteSpace& s, const std::filesystem::path& path) {
    std::ofstream out(path);
    if (!out) throw_input("cannot write file: " + path.string());
    out << space_to_canonical_json(s);
}

// Map files: {"domain": <path or inline space>, "codomain": ...,
// "assignment": {point: point}}. Paths resolve relative to the map file.
inline SpacePtr resolve_space_ref(const json& j, const std::filesystem::path& base) {
    if (j.is_string())
        return share(load_space(base / j.get<std::string>()));
    if (j.is_object()) return share(space_from_json(j));
    throw_input("space reference must be a path string or an inline space object");
}

inline ContinuousMap map_from_json(const json& j, const std::filesystem::path& base) {
    if (!j.is_object() || !j.contains("domain") || !j.contains("codomain") ||
        !j.contains("assignment"))
        throw_input("map file needs \"domain\", \"codomain\" and \"assignment\"");
    SpacePtr dom = resolve_space_ref(j["domain"], base);
    SpacePtr cod = resolve_space_ref(j["codomain"], base);
    if (!j["assignment"].is_object()) throw_input("\"assignment\" must be an object");
    std::vector<std::uint8_t> img(static_cast<std::size_t>(dom->size()), 0);
    std::vector<bool> seen(static_cast<std::size_t>(dom->size()), false);
    for (const auto& [from, to] : j["assignment"].items()) {
        int x = dom->index(from);
        if (!to.is_string()) throw_input("assignment values must be point names");
        img[static_cast<std::size_t>(x)] = static_cast<std::uint8_t>(cod->index(to.get<std::string>()));
        seen[static_cast<std::size_t>(x)] = true;
    }
    for (int x = 0; x < dom->size(); ++x)
        if (!seen[static_cast<std::size_t>(x)])
            throw_input("assignment misses domain point: " + dom->name(x));
    return make_map(std::move(dom), std::move(cod), std::move(img));
}

inline ContinuousMap load_map(const std::filesystem::path& path) {
    try {
        return map_from_json(read_json_file(path), path.parent_path());
    } catch (const Error& e) {
        if (e.kind() == Error::Kind::InvalidInput)
            throw_input(path.string() + ": " + e.what());
        throw;
    }
}

// PL circle map files: {"subdivision": m, "images": [positions...]}.
inline PLCircleMap plmap_from_json(const json& j) {
    if (!j.is_object() || !j.contains("subdivision") || !j.contains("images"))
        throw_input("circle map file needs \"subdivision\" and \"images\"");
    PLCircleMap m;
    if (!j["subdivision"].is_number_integer()) throw_input("\"subdivision\" must be an integer");
    m.subdivision = j["subdivision"].get<std::int64_t>();
    if (!j["images"].is_array()) throw_input("\"images\" must be an array of integers");
    for (const auto& v : j["images"]) {
        if (!v.is_number_integer()) throw_input("\"images\" must be an array of integers");
        m.images.push_back(v.get<std::int64_t>());
    }
    return m;
}

inline PLCircleMap load_plmap(const std::filesystem::path& path) {
    try {
        return plmap_from_json(read_json_file(path));
    } catch (const Error& e) {
        if (e.kind() == Error::Kind::InvalidInput)
            throw_input(path.string() + ": " + e.what());
        throw;
    }
}

// ---------------------------------------------------------------------------
// Report rendering helpers. Infinity renders as the literal "inf".

inline json to_json(const ExtendedNat& d) {
    if (d.is_infinite()) return json("inf");
    return json(d.value());
}

inline json mask_to_json(const FiniteSpace& s, Mask m) {
    json a = json::array();
    mask_for_each(m, [&](int i) { a.push_back(s.name(i)); });
    return a;
}

inline json masks_to_json(const FiniteSpace& s, const std::vector<Mask>& ms) {
    json a = json::array();
    for (Mask m : ms) a.push_back(mask_to_json(s, m));
    return a;
}

inline json assignment_to_json(const ContinuousMap& f) {
    json a = json::object();
    for (int x = 0; x < f.dom->size(); ++x) a[f.dom->name(x)] = f.cod->name(f.at(x));
    return a;
}

inline json dynbits_to_json(const DynBits& b) {
    json a = json::array();
    b.for_each([&](std::size_t i) { a.push_back(i); });
    return a;
}

}  // namespace hodist::io
