#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace xicor {

/// Base class for every domain error raised by the library. The CLI maps
/// these to exit code 1.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Two observations share a value in one coordinate. Indices are 0-based,
/// first < second.
class TieError : public Error {
public:
    TieError(std::size_t first, std::size_t second, double value);

    std::size_t first() const noexcept { return first_; }
    std::size_t second() const noexcept { return second_; }
    double value() const noexcept { return value_; }

private:
    std::size_t first_;
    std::size_t second_;
    double value_;
};

class NonFiniteError : public Error {
public:
    explicit NonFiniteError(std::size_t index);
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class SizeError : public Error {
public:
    using Error::Error;
};

class MRangeError : public Error {
public:
    using Error::Error;
};

class IndexError : public Error {
public:
    using Error::Error;
};

class DegenerateError : public Error {
public:
    using Error::Error;
};

class RhoRangeError : public Error {
public:
    using Error::Error;
};

class GammaRangeError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

/// Asymptotic test requested outside the regime its limit theorem covers.
class RegimeError : public Error {
public:
    using Error::Error;
};

/// Input file problem. Line and column are 1-based; column 0 means the whole
/// line.
class ParseError : public Error {
public:
    ParseError(std::size_t line, std::size_t column, const std::string& what);

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }

private:
    std::size_t line_;
    std::size_t column_;
};

} // namespace xicor
