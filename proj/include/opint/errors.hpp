#ifndef OPINT_ERRORS_HPP
#define OPINT_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace opint {

struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

// Eigensolver sweep cap exceeded.
struct NonConvergence : Error {
    explicit NonConvergence(const std::string& msg) : Error(msg) {}
};

struct DimMismatch : Error {
    explicit DimMismatch(const std::string& msg) : Error(msg) {}
};

// A derivative beyond the model's exact order was requested.
struct OrderExceeded : Error {
    explicit OrderExceeded(const std::string& msg) : Error(msg) {}
};

struct EvalError : Error {
    explicit EvalError(const std::string& msg) : Error(msg) {}
};

struct InvalidP : Error {
    explicit InvalidP(const std::string& msg) : Error(msg) {}
};

struct NotCommuting : Error {
    explicit NotCommuting(const std::string& msg) : Error(msg) {}
};

// Quadrature oracle only supports low orders.
struct UnsupportedOrder : Error {
    explicit UnsupportedOrder(const std::string& msg) : Error(msg) {}
};

// Denominator of a reported ratio underflowed.
struct DivisionDegenerate : Error {
    explicit DivisionDegenerate(const std::string& msg) : Error(msg) {}
};

struct ConfigError : Error {
    explicit ConfigError(const std::string& msg) : Error(msg) {}
};

} // namespace opint

#endif
