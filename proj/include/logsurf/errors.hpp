#pragma once

#include <stdexcept>
#include <string>

namespace logsurf {

/// Base error for all library failures.
struct Error : std::runtime_error {
    explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Malformed model text. Carries 1-based line/column of the offending token.
struct ParseError : Error {
    int line;
    int column;
    ParseError(int line_, int column_, const std::string& msg)
        : Error("parse error at " + std::to_string(line_) + ":" + std::to_string(column_) + ": " + msg),
          line(line_), column(column_) {}
};

/// A model failed validation; the violation list lives in the message.
struct ValidationError : Error {
    using Error::Error;
};

/// Dimension mismatch between classes or lattices.
struct DimensionError : Error {
    using Error::Error;
};

/// The boundary is an admissible rod/fork, so the divisor cannot be big.
struct NotAffineCompletion : Error {
    explicit NotAffineCompletion(const std::string& msg)
        : Error("boundary not big - not an affine completion: " + msg) {}
};

/// A verified mathematical identity failed; indicates inconsistent input data
/// (e.g. missing tracked curves) or a bug, never a routine negative result.
struct InternalConsistencyError : Error {
    using Error::Error;
};

} // namespace logsurf
