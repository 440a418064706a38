#pragma once

#include <stdexcept>
#include <string>

namespace ksproof {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class DimensionError : public Error {
public:
    using Error::Error;
};

/// Parallel inputs where distinct rays are required.
class DegenerateError : public Error {
public:
    using Error::Error;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class DuplicateRayError : public Error {
public:
    DuplicateRayError(const std::string & msg, std::size_t first, std::size_t second)
        : Error(msg), first_(first), second_(second)
    {
    }

    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }

private:
    std::size_t first_;
    std::size_t second_;
};

/// The pair overlap exceeds delta_n; suggested_order() is the smallest order that fits.
class OrderTooLowError : public Error {
public:
    OrderTooLowError(const std::string & msg, int suggested)
        : Error(msg), suggested_(suggested)
    {
    }

    int suggested_order() const noexcept { return suggested_; }

private:
    int suggested_;
};

class InvalidModelError : public Error {
public:
    using Error::Error;
};

class UnsupportedAfterDedupError : public Error {
public:
    using Error::Error;
};

class HypothesisError : public Error {
public:
    using Error::Error;
};

class FixtureError : public Error {
public:
    using Error::Error;
};

/// Malformed input files or problem descriptions.
class InputError : public Error {
public:
    using Error::Error;
};

} // namespace ksproof
