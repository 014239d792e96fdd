#pragma once

#include <stdexcept>
#include <string>

namespace topowave {

// Every failure raised by the library derives from Error, so callers can
// catch one type at the boundary (the CLI does exactly that).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class FileNotFound : public Error {
public:
    using Error::Error;
};

class MalformedFormat : public Error {
public:
    using Error::Error;
};

class UnsupportedBitDepth : public Error {
public:
    using Error::Error;
};

class IoFailure : public Error {
public:
    using Error::Error;
};

class OutOfBounds : public Error {
public:
    using Error::Error;
};

class DimensionMismatch : public Error {
public:
    using Error::Error;
};

class ImageTooSmall : public Error {
public:
    using Error::Error;
};

class PreconditionViolation : public Error {
public:
    using Error::Error;
};

}  // namespace topowave
