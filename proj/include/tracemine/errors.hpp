#ifndef TRACEMINE_ERRORS_HPP
#define TRACEMINE_ERRORS_HPP

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace tracemine {

// Base class for all library errors.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Input graph contains a directed cycle; carries one witness cycle.
class CycleError : public Error {
public:
    CycleError(const std::string& msg, std::vector<std::uint32_t> witness)
        : Error(msg), witness_(std::move(witness)) {}

    // Vertex ids along one cycle, in order (first vertex not repeated).
    const std::vector<std::uint32_t>& witness() const { return witness_; }

private:
    std::vector<std::uint32_t> witness_;
};

// An index (vertex id, label id) is out of range.
class RangeError : public Error {
public:
    using Error::Error;
};

// Malformed input file; carries the 1-based line number.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, std::size_t line)
        : Error(msg + " (line " + std::to_string(line) + ")"), line_(line) {}

    std::size_t line() const { return line_; }

private:
    std::size_t line_ = 0;
};

// A 64-bit path count (or a sum of them) would overflow.
class OverflowError : public Error {
public:
    using Error::Error;
};

// A numeric parameter is outside its documented domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// An enumeration would emit more traces than the configured budget.
class BudgetExceeded : public Error {
public:
    using Error::Error;
};

} // namespace tracemine

#endif // TRACEMINE_ERRORS_HPP
