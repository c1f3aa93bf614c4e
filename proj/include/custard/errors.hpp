#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace custard {

/// Malformed input row. `line()` is 1-based.
class ParseError : public std::runtime_error {
public:
    ParseError(const std::string &source, std::size_t line, const std::string &what)
        : std::runtime_error(source + ":" + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

/// Input is well-formed but inconsistent (unknown node in labels, empty graph, ...).
class ValidationError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// An experiment cell cannot be set up, e.g. no negative pool after the retry budget.
class ConfigError : public std::runtime_error {
    using std::runtime_error::runtime_error;
};

} // namespace custard
