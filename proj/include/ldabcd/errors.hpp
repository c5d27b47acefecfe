#pragma once

#include <stdexcept>
#include <string>

namespace ldabcd {

// Precondition on an argument shape was broken by the caller (dimension
// mismatch, empty input, incompatible spaces).
class ContractViolation : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

// Fewer than two vertices remain active on a graph; the agent has to move on
// to another parameter configuration.
class GraphExhausted : public std::runtime_error {
public:
    GraphExhausted() : std::runtime_error("graph exhausted: fewer than two active vertices") {}
    using std::runtime_error::runtime_error;
};

// min(A(S), A(S')) is zero, so the conductance of the cut is undefined.
class DegenerateCut : public std::domain_error {
public:
    DegenerateCut() : std::domain_error("degenerate cut: zero internal mass") {}
};

// Upper and lower conductance bounds coincide; CQ2 cannot be normalized.
class DegenerateBounds : public std::domain_error {
public:
    DegenerateBounds() : std::domain_error("degenerate conductance bounds: upper == lower") {}
};

// An active vertex has zero degree where a connected graph is required.
class ZeroDegreeVertex : public std::domain_error {
public:
    explicit ZeroDegreeVertex(std::size_t v)
        : std::domain_error("active vertex " + std::to_string(v) + " has zero degree"), vertex(v) {}
    std::size_t vertex;
};

class ConfigError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace ldabcd
