#pragma once

#include <stdexcept>
#include <string>

namespace nilc {

// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// An enumeration would exceed a configured limit (Hom-set bits, group order,
// product basis size). The caller has to lower dimensions or raise the cap.
class CapExceeded : public Error {
public:
    using Error::Error;
};

class DimMismatch : public Error {
public:
    using Error::Error;
};

class NotInvertible : public Error {
public:
    using Error::Error;
};

class Inhomogeneous : public Error {
public:
    using Error::Error;
};

class ParseError : public Error {
public:
    using Error::Error;
};

class NegativeDimension : public Error {
public:
    using Error::Error;
};

// Input outside the supported presentation class for the requested operation.
class Unsupported : public Error {
public:
    using Error::Error;
};

}  // namespace nilc
