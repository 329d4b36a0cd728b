#pragma once

#include <cstdint>
#include <numeric>
#include <string>

#include "hodist/error.hpp"

namespace hodist {

// Exact positive-or-negative rational, just enough for ball radii. Parsed
// from "2", "3/2" or "1.5"; normalized with positive denominator.
struct Rational {
    std::int64_t num = 0;
    std::int64_t den = 1;

    Rational() = default;
    Rational(std::int64_t n, std::int64_t d) : num(n), den(d) { normalize(); }
    explicit Rational(std::int64_t n) : num(n), den(1) {}

    void normalize() {
        if (den == 0) throw_input("rational with zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        std::int64_t g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }

    bool positive() const { return num > 0; }

    // Comparison against an integer without overflow concerns at our scale.
    bool leq_int(std::int64_t k) const { return num <= k * den; }
    bool gt_int(std::int64_t k) const { return num > k * den; }

    // ceil(num/den) for positive rationals.
    std::int64_t ceil() const { return (num + den - 1) / den; }

    std::string str() const {
        if (den == 1) return std::to_string(num);
        return std::to_string(num) + "/" + std::to_string(den);
    }

    static Rational parse(const std::string& s) {
        if (s.empty()) throw_input("empty rational literal");
        auto parse_int = [](const std::string& t) -> std::int64_t {
            if (t.empty()) throw_input("malformed rational literal");
            std::size_t pos = 0;
            std::int64_t v = 0;
            bool neg = false;
            if (t[pos] == '+' || t[pos] == '-') {
                neg = t[pos] == '-';
                ++pos;
            }
            if (pos == t.size()) throw_input("malformed rational literal");
            for (; pos < t.size(); ++pos) {
                if (t[pos] < '0' || t[pos] > '9') throw_input("malformed rational literal: " + t);
                v = v * 10 + (t[pos] - '0');
            }
            return neg ? -v : v;
        };
        auto slash = s.find('/');
        if (slash != std::string::npos) {
            return Rational(parse_int(s.substr(0, slash)), parse_int(s.substr(slash + 1)));
        }
        auto dot = s.find('.');
        if (dot != std::string::npos) {
            std::string frac = s.substr(dot + 1);
            if (frac.empty()) throw_input("malformed rational literal: " + s);
            std::int64_t den = 1;
            for (std::size_t i = 0; i < frac.size(); ++i) den *= 10;
            std::string head = s.substr(0, dot);
            bool neg = !head.empty() && head[0] == '-';
            std::int64_t whole = head.empty() || head == "-" || head == "+" ? 0 : parse_int(head);
            std::int64_t f = parse_int(frac);
            std::int64_t n = (whole < 0 ? -whole : whole) * den + f;
            if (neg || whole < 0) n = -n;
            return Rational(n, den);
        }
        return Rational(parse_int(s));
    }
};

}  // namespace hodist
