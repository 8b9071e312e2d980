#pragma once

#include <stdexcept>
#include <string>

namespace lifecd {

/// Base class for all library errors.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Malformed input document (bad token, wrong field count, ...).
struct ParseError : Error {
    using Error::Error;
};

/// Structurally well-formed input that violates a model constraint
/// (probability out of range, self-loop, disconnected graph, ...).
struct ValidationError : Error {
    using Error::Error;
};

/// Argument outside the mathematical domain of an operation.
struct DomainError : Error {
    using Error::Error;
};

/// Distributions combined at different truncation lengths.
struct LengthMismatch : Error {
    using Error::Error;
};

/// max_combine over zero distributions.
struct EmptyList : Error {
    using Error::Error;
};

/// Requested quantile exceeds the mass captured within the truncation window.
struct TailTooHeavy : Error {
    using Error::Error;
};

/// Exact state-space computation requested for a graph beyond the size limit.
struct TooLarge : Error {
    using Error::Error;
};

/// Edge referenced by endpoints that is not present in the graph.
struct UnknownEdge : Error {
    using Error::Error;
};

/// finalize/reduce called on a state whose shape does not admit the operation.
struct NotTerminal : Error {
    using Error::Error;
};

/// Internal bookkeeping desynchronized; indicates a bug, not bad input.
struct InternalInvariantViolation : Error {
    using Error::Error;
};

} // namespace lifecd
