#pragma once

#include <stdexcept>
#include <string>

namespace hodist {

// Two failure families, mirrored in CLI exit codes: invalid input (bad files,
// unknown identifiers, broken invariants of arguments) and size-guard
// refusals (an enumeration would exceed its configured cap).
class Error : public std::runtime_error {
public:
    enum class Kind { InvalidInput, SizeGuard };

    Error(Kind kind, const std::string& msg) : std::runtime_error(msg), kind_(kind) {}
    Kind kind() const { return kind_; }

private:
    Kind kind_;
};

[[noreturn]] inline void throw_input(const std::string& msg) {
    throw Error(Error::Kind::InvalidInput, msg);
}

[[noreturn]] inline void throw_guard(const std::string& msg) {
    throw Error(Error::Kind::SizeGuard, "size guard: " + msg);
}

}  // namespace hodist
