#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace twistcube {

// Every library failure derives from Error so callers can map the category
// to a process exit code without string matching.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Bad index, bad length, malformed constants.
class UsageError : public Error {
public:
    using Error::Error;
};

class OverflowError : public Error {
public:
    using Error::Error;
};

// A configured cap (points, cones, grid size) was exceeded.
class CapacityError : public Error {
public:
    CapacityError(std::string what, std::uint64_t cap)
        : Error(what + " (cap " + std::to_string(cap) + ")"), cap_(cap) {}

    std::uint64_t cap() const noexcept { return cap_; }

private:
    std::uint64_t cap_;
};

// The equivalent untwistedness conditions disagreed. Never a valid state.
class InternalInconsistency : public Error {
public:
    using Error::Error;
};

// Structured input could not be parsed or failed validation.
class ConfigError : public Error {
public:
    using Error::Error;
};

} // namespace twistcube
