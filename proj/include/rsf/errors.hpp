#pragma once

#include <stdexcept>
#include <string>

namespace rsf {

// Malformed external input: files, CLI-provided vectors, graph text format.
class InputError : public std::runtime_error {
public:
    explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// A size guard of the exact oracle was exceeded (dense or enumeration path).
class GuardError : public std::runtime_error {
public:
    explicit GuardError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace rsf
