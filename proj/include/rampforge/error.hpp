#pragma once

#include <stdexcept>
#include <string>

namespace rampforge {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed text input (hex strings, corpus lines, model book files).
class ParseError : public Error {
public:
    using Error::Error;
};

/// A precondition on an argument was violated (bad ramp, bad edit, k out of range...).
class InvalidArgument : public Error {
public:
    using Error::Error;
};

/// A color or ramp left the sRGB gamut where the caller asked for strict handling.
class GamutError : public Error {
public:
    using Error::Error;
};

/// Training or model lookup failed (insufficient corpus, unknown model id...).
class ModelError : public Error {
public:
    using Error::Error;
};

} // namespace rampforge
