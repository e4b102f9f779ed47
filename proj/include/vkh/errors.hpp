#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace vkh {

// Bad user input: malformed PD text, invalid diagrams, bad flags. Exit code 1.
class InputError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class ParseError : public InputError {
public:
    ParseError(const std::string& msg, std::size_t offset, std::size_t line, std::size_t column)
        : InputError("parse error at " + std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
          offset(offset), line(line), column(column) {}

    std::size_t offset;
    std::size_t line;
    std::size_t column;
};

// A computed object violated an identity that must hold (d^2 != 0, odd loop
// parity, imaginary residue, ...). Exit code 2.
class ConsistencyError : public std::logic_error {
public:
    using std::logic_error::logic_error;
};

} // namespace vkh
