#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace lampmet {

// Base of every error the library throws. InputError covers malformed files
// and out-of-range arguments (CLI exit code 1); NumericError covers failures
// of the numerical pipeline itself (CLI exit code 2).
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class InputError : public Error {
public:
    using Error::Error;
};

class NumericError : public Error {
public:
    using Error::Error;
};

// --- input errors ---

class ParseError : public InputError {
public:
    ParseError(std::size_t row, std::size_t column, const std::string& what)
        : InputError("parse error at row " + std::to_string(row) + ", column " +
                     std::to_string(column) + ": " + what),
          row_(row),
          column_(column) {}

    std::size_t row() const { return row_; }
    std::size_t column() const { return column_; }

private:
    std::size_t row_;
    std::size_t column_;
};

class RaggedRow : public InputError {
public:
    RaggedRow(std::size_t row, std::size_t expected, std::size_t got)
        : InputError("row " + std::to_string(row) + " has " + std::to_string(got) +
                     " columns, expected " + std::to_string(expected)),
          row_(row) {}

    std::size_t row() const { return row_; }

private:
    std::size_t row_;
};

class MissingLabelColumn : public InputError {
public:
    using InputError::InputError;
};

class InvalidK : public InputError {
public:
    using InputError::InputError;
};

class TooFewPoints : public InputError {
public:
    using InputError::InputError;
};

class TooFewSamples : public InputError {
public:
    using InputError::InputError;
};

class InvalidInterval : public InputError {
public:
    using InputError::InputError;
};

class ShapeMismatch : public InputError {
public:
    using InputError::InputError;
};

class SingleClass : public InputError {
public:
    using InputError::InputError;
};

// --- numeric errors ---

class SingularSystem : public NumericError {
public:
    using NumericError::NumericError;
};

class DegenerateData : public NumericError {
public:
    using NumericError::NumericError;
};

class RankCollapse : public NumericError {
public:
    using NumericError::NumericError;
};

class DegenerateDenominator : public NumericError {
public:
    using NumericError::NumericError;
};

}  // namespace lampmet
