#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace ekg {

/// Sequence values and indices. Indices are 1-based throughout.
using value_t = std::uint64_t;

/// Raised when an operation needs a mode that was not enabled (e.g. trace).
class unsupported_operation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

/// Raised when a proved property of the sequence fails at runtime.
/// Any occurrence is an implementation bug, never a property of the data.
class invariant_violation : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace ekg
