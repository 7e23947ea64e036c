#pragma once

#include <stdexcept>
#include <string>

namespace g1lab {

// Error taxonomy shared by all modules.  Every throw carries a message that
// names the offending inputs; callers that want a soft failure (the CLI, the
// scan loop) catch these and translate to exit codes / flagged rows.

struct NotInvertible : std::domain_error {
    explicit NotInvertible(const std::string& msg) : std::domain_error(msg) {}
};

struct OutOfRange : std::domain_error {
    explicit OutOfRange(const std::string& msg) : std::domain_error(msg) {}
};

struct BudgetExceeded : std::runtime_error {
    explicit BudgetExceeded(const std::string& msg) : std::runtime_error(msg) {}
};

struct QuadratureFailure : std::runtime_error {
    explicit QuadratureFailure(const std::string& msg) : std::runtime_error(msg) {}
};

struct DegenerateRegression : std::runtime_error {
    explicit DegenerateRegression(const std::string& msg) : std::runtime_error(msg) {}
};

// Invariant breakage that should be unreachable given the preconditions.
struct InternalError : std::logic_error {
    explicit InternalError(const std::string& msg) : std::logic_error(msg) {}
};

}  // namespace g1lab
