#pragma once
#include <stdexcept>
#include <string>

namespace zhualg {

// Raised when a computation would need vectors beyond the configured depth
// cap.  Callers either enlarge the cap or report the failure; results are
// never silently truncated.
struct TruncationError : std::runtime_error {
    explicit TruncationError(const std::string& what) : std::runtime_error(what) {}
};

// Raised when a verified identity fails (used by the verify drivers to
// distinguish "computed, unequal" from bad input).
struct IdentityFailure : std::runtime_error {
    explicit IdentityFailure(const std::string& what) : std::runtime_error(what) {}
};

} // namespace zhualg
