#pragma once

#include <stdexcept>
#include <string>

namespace splm {

struct ring_mismatch : std::invalid_argument {
    explicit ring_mismatch(const std::string& what) : std::invalid_argument(what) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

// A configurable resource limit (S-pair budget, enumeration budget) was hit.
struct guard_exceeded : std::runtime_error {
    explicit guard_exceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace splm
