#pragma once

#include <stdexcept>
#include <string>

namespace subopt {

// Invalid user-supplied values: bad distribution parameters, malformed
// interval sets, masses out of range, unsupported moment orders.
class invalid_argument_error : public std::invalid_argument {
public:
    explicit invalid_argument_error(const std::string& msg)
        : std::invalid_argument(msg) {}
};

// A numerical routine failed to reach its target accuracy: Newton iteration
// stalled, a factorization hit a non-positive pivot, quadrature could not
// converge. Carries enough text to diagnose which stage gave up.
class numerical_error : public std::runtime_error {
public:
    explicit numerical_error(const std::string& msg)
        : std::runtime_error(msg) {}
};

// Malformed external input encountered while streaming data (CSV rows,
// JSON design files).
class parse_error : public std::runtime_error {
public:
    explicit parse_error(const std::string& msg)
        : std::runtime_error(msg) {}
};

} // namespace subopt
