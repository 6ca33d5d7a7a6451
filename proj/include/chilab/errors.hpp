#ifndef CHILAB_ERRORS_HPP
#define CHILAB_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace chilab {

// Bad arguments: out-of-range parameters, vertices outside 0..n-1, etc.
class ParameterError : public std::invalid_argument {
public:
    explicit ParameterError(const std::string& what) : std::invalid_argument(what) {}
};

// The request is well-formed but outside what this build can decide
// (size caps, exhausted search budgets).
class CapabilityError : public std::runtime_error {
public:
    explicit CapabilityError(const std::string& what) : std::runtime_error(what) {}
};

// A counting step that is guaranteed by the hypotheses failed anyway.
// On inputs that violate an unchecked hypothesis (typically sparseness)
// this is the expected exit and carries the violated inequality.
class InvariantViolation : public std::runtime_error {
public:
    explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

// Malformed graph6/sparse6 or report input; `offset` is a byte position.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string& what, std::size_t offset)
        : std::runtime_error(what + " (byte " + std::to_string(offset) + ")"), offset_(offset) {}
    std::size_t offset() const { return offset_; }

private:
    std::size_t offset_;
};

} // namespace chilab

#endif
