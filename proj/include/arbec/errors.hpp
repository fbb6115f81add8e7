#pragma once

#include <stdexcept>
#include <string>

namespace arbec {

// error taxonomy used across the library; all derive from std exceptions so
// callers can catch coarsely, tests catch the exact kind.

struct duplicate_edge_error : std::logic_error {
    explicit duplicate_edge_error(const std::string& what) : std::logic_error(what) {}
};

struct missing_edge_error : std::logic_error {
    explicit missing_edge_error(const std::string& what) : std::logic_error(what) {}
};

struct duplicate_element_error : std::logic_error {
    explicit duplicate_element_error(const std::string& what) : std::logic_error(what) {}
};

struct missing_element_error : std::logic_error {
    explicit missing_element_error(const std::string& what) : std::logic_error(what) {}
};

struct invalid_config_error : std::logic_error {
    explicit invalid_config_error(const std::string& what) : std::logic_error(what) {}
};

// a structure made an unsupported request (size caps on brute-force oracles).
struct unsupported_error : std::runtime_error {
    explicit unsupported_error(const std::string& what) : std::runtime_error(what) {}
};

// an internal invariant broke; state may be inconsistent.
struct internal_error : std::runtime_error {
    explicit internal_error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : std::runtime_error {
    explicit parse_error(const std::string& what) : std::runtime_error(what) {}
};

} // namespace arbec
