#pragma once

#include <stdexcept>
#include <string>

namespace hashrec {

// Malformed input files, broken invariants in loaded data.
class DataError : public std::runtime_error {
public:
    explicit DataError(const std::string& what) : std::runtime_error(what) {}
};

// Bad parameters or options supplied by the caller.
class UsageError : public std::invalid_argument {
public:
    explicit UsageError(const std::string& what) : std::invalid_argument(what) {}
};

} // namespace hashrec
