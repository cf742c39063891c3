#ifndef SDRED_ERRORS_HPP
#define SDRED_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace sdred {

// Base class for all errors raised by the library.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Mismatched or out-of-range dimensions / indices in matrix operations.
struct DimensionError : Error {
    explicit DimensionError(const std::string& msg) : Error(msg) {}
};

// Nullspace dimension exceeds the caller-supplied cap.
struct DimensionTooLarge : Error {
    explicit DimensionTooLarge(const std::string& msg) : Error(msg) {}
};

// Malformed text input (instance files, matrices, expressions).
struct ParseError : Error {
    explicit ParseError(const std::string& msg) : Error(msg) {}
};

// A reduction's precondition does not hold for the given instance.
struct Inapplicable : Error {
    explicit Inapplicable(const std::string& msg) : Error(msg) {}
};

// A bound of the generic framework failed; message names the bound and values.
struct ConditionViolated : Error {
    explicit ConditionViolated(const std::string& msg) : Error(msg) {}
};

// An expression evaluated to a non-integral value where an integer is required.
struct NotInteger : Error {
    explicit NotInteger(const std::string& msg) : Error(msg) {}
};

// A constructed instance would exceed a configured size limit.
struct BudgetExceeded : Error {
    explicit BudgetExceeded(const std::string& msg) : Error(msg) {}
};

// No feasible power-of-2 exponent within the configured ceiling.
struct NoFeasibleM : Error {
    explicit NoFeasibleM(const std::string& msg) : Error(msg) {}
};

} // namespace sdred

#endif
