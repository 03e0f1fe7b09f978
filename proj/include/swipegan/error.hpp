#pragma once

#include <stdexcept>
#include <string>

namespace swipegan {

// Base class for all recoverable errors raised by the library. The CLI maps
// these to exit code 2 (validation) and everything else to exit code 1.
struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct UnknownCharacterError : Error {
    explicit UnknownCharacterError(char c)
        : Error(std::string("unknown character '") + c + "'") {}
};

struct InvalidWordError : Error {
    using Error::Error;
};

struct InvalidArgumentError : Error {
    using Error::Error;
};

struct LengthMismatchError : Error {
    using Error::Error;
};

struct ShapeError : Error {
    using Error::Error;
};

struct ParseError : Error {
    ParseError(std::size_t line, const std::string& what)
        : Error("line " + std::to_string(line) + ": " + what), line(line) {}
    std::size_t line;
};

struct InfeasibleTargetError : Error {
    using Error::Error;
};

struct TooLargeError : Error {
    using Error::Error;
};

struct NoFeasibleWordError : Error {
    using Error::Error;
};

}  // namespace swipegan
