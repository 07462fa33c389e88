#pragma once

#include <stdexcept>
#include <string>

namespace qsl {

// Raised when a computation contradicts an inequality the library is built
// to uphold (a measured orthogonality time below its bound, a broken
// conservation law). Distinct from std::invalid_argument so callers can
// separate bad input from a falsified invariant.
class AssertionFailure : public std::runtime_error {
public:
    explicit AssertionFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace qsl
