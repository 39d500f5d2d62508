#pragma once

#include <stdexcept>
#include <string>

namespace wafomlab {

/// Base class for all errors raised by this library.
class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two values built over different group specifications were combined.
class spec_mismatch_error : public error {
public:
    using error::error;
};

/// A brute-force operation was asked to enumerate more states than its cap allows.
class capacity_error : public error {
public:
    using error::error;
};

/// A bound or formula was evaluated outside its stated hypothesis.
class precondition_error : public error {
public:
    using error::error;
};

/// Malformed input file or stream.
class parse_error : public error {
public:
    using error::error;
};

/// An internal consistency check failed (e.g. a point set that is not a subgroup).
class internal_error : public error {
public:
    using error::error;
};

} // namespace wafomlab
