#pragma once

#include <stdexcept>
#include <string>

namespace specf {

/// Input file that could not be parsed or fails format-level validation.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

/// Failed numerical precondition or computation: disconnected graph,
/// eigensolver non-convergence, degenerate systems.
class NumericalError : public std::runtime_error {
public:
    explicit NumericalError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace specf
