#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gs {

/// Evaluation left the real domain of a function (log of a non-positive
/// value, fractional power of a negative base, division by zero, ...).
/// When the value came from a parsed expression, `node()` is the index of
/// the offending subexpression inside its expression tree, -1 otherwise.
class domain_error : public std::runtime_error {
public:
    explicit domain_error(const std::string& msg, int node = -1)
        : std::runtime_error(msg), node_(node) {}
    int node() const noexcept { return node_; }

private:
    int node_;
};

/// Syntax or lexical error from the expression parser; `position()` is the
/// zero-based offset into the source text.
class parse_error : public std::runtime_error {
public:
    parse_error(const std::string& msg, std::size_t pos)
        : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"),
          pos_(pos) {}
    std::size_t position() const noexcept { return pos_; }

private:
    std::size_t pos_;
};

/// An operation was asked to act on a solution of the wrong symmetry class
/// (e.g. the exceptional map applied to a non-exceptional profile pair).
class class_mismatch : public std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Numerical failure: root finding found no real root, an integrator ran out
/// of step rejections, a required contour did not close, ...
class numeric_error : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace gs
