#pragma once

#include <stdexcept>
#include <string>

namespace rcm {

/// Bad input: out-of-range indices, malformed files, violated preconditions.
class UsageError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An enumeration cap would be exceeded.
class ResourceError : public std::runtime_error {
public:
    ResourceError(const std::string& what, unsigned long long cap)
        : std::runtime_error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}
    unsigned long long cap() const noexcept { return cap_; }

private:
    unsigned long long cap_;
};

/// Root bracketing or other numerical failure.
class NumericalError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace rcm
