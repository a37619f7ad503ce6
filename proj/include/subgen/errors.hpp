#pragma once

#include <stdexcept>
#include <string>

namespace subgen {

// Bad user input: malformed configs, violated preconditions, out-of-range
// requests. The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

// A verified identity or internal invariant failed. This is a bug (or a
// genuine counterexample) and the CLI maps it to exit code 2.
class InternalError : public std::runtime_error {
public:
    explicit InternalError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace subgen
