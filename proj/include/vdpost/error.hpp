#pragma once

#include <stdexcept>
#include <string>

namespace vdpost {

/// Base of every error thrown by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Invalid argument or configuration value.
class ParameterError : public Error {
public:
    using Error::Error;
};

/// Image dimensions that are empty or disagree with each other.
class DimensionError : public Error {
public:
    using Error::Error;
};

/// Pixel coordinate outside the image.
class BoundsError : public Error {
public:
    using Error::Error;
};

/// Inputs that are individually valid but inconsistent with each other
/// (frame size mismatch across a sequence, GT outside the frame, ...).
class DataError : public Error {
public:
    using Error::Error;
};

enum class IoErrorKind {
    Unreadable,
    MalformedHeader,
    UnsupportedFormat,
    Truncated,
    Unwritable,
};

class IoError : public Error {
public:
    IoError(IoErrorKind kind, const std::string& what) : Error(what), kind_(kind) {}

    IoErrorKind kind() const noexcept { return kind_; }

private:
    IoErrorKind kind_;
};

}  // namespace vdpost
