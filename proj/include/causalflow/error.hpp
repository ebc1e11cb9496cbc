#pragma once

#include <stdexcept>
#include <string>

namespace causalflow {

/// Error in the semantic domain: unknown vertex, violated precondition,
/// exceeded enumeration guard, and the like. CLI exit code 1.
class DomainError : public std::runtime_error {
public:
    explicit DomainError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Error while reading one of the text formats. Carries the 1-based line
/// number of the offending line. CLI exit code 2.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& msg)
        : std::runtime_error("line " + std::to_string(line) + ": " + msg), line_(line) {}

    int line() const { return line_; }

private:
    int line_;
};

} // namespace causalflow
