#pragma once

#include <stdexcept>
#include <string>

namespace hqca {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed instance text, circuit text or snapshot text.
class ParseError : public Error {
public:
    ParseError(int line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

// A gate would leave a classical data site in superposition.
class ConstructionViolation : public Error {
public:
    using Error::Error;
};

class StaleMatch : public Error {
public:
    using Error::Error;
};

} // namespace hqca
