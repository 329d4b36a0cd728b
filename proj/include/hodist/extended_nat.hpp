#pragma once

#include <cassert>
#include <compare>
#include <cstdint>
#include <string>

namespace hodist {

// A value in N ∪ {∞}: the codomain of the distance. Totally ordered with ∞
// as top; addition saturates at ∞. Rendered as "inf" in structured output.
class ExtendedNat {
public:
    constexpr ExtendedNat() : v_(0) {}
    constexpr explicit ExtendedNat(std::uint64_t v) : v_(v) { assert(v != kInf); }

    static constexpr ExtendedNat infinity() {
        ExtendedNat e;
        e.v_ = kInf;
        return e;
    }

    bool is_infinite() const { return v_ == kInf; }
    std::uint64_t value() const {
        assert(!is_infinite());
        return v_;
    }

    friend bool operator==(ExtendedNat a, ExtendedNat b) = default;
    friend std::strong_ordering operator<=>(ExtendedNat a, ExtendedNat b) { return a.v_ <=> b.v_; }

    friend ExtendedNat operator+(ExtendedNat a, ExtendedNat b) {
        if (a.is_infinite() || b.is_infinite()) return infinity();
        return ExtendedNat(a.v_ + b.v_);
    }

    std::string str() const { return is_infinite() ? "inf" : std::to_string(v_); }

private:
    static constexpr std::uint64_t kInf = ~std::uint64_t{0};
    std::uint64_t v_;
};

}  // namespace hodist
