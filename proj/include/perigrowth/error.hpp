#pragma once

#include <stdexcept>
#include <string>

namespace perigrowth {

// Malformed or inconsistent user input (files, flags). CLI exit code 2.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Text parse failure with a 1-based line number.
class ParseError : public InputError {
public:
    ParseError(std::size_t line, const std::string& what)
        : InputError("line " + std::to_string(line) + ": " + what), line_(line) {}

    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

// A configured cap (ball size, cycle count, enumeration guard) was hit.
class ResourceLimitError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A mathematical computation did not succeed (no fit, failed verification).
// CLI exit code 1.
class MathError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace perigrowth
