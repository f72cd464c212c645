#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rmcover {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// A requested enumeration exceeds its configured size guard.
class GuardError : public Error {
public:
    using Error::Error;
};

/// Two objects built on different class numberings were mixed.
class DigestMismatch : public Error {
public:
    using Error::Error;
};

/// Class membership could not be decided within the allotted budget.
class Undecidable : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, std::size_t line = 0)
        : Error(line == 0 ? what : "line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

}  // namespace rmcover
