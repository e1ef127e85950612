#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace rankstat {

// Base for every error raised by the library. The CLI maps these to exit code 2.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
public:
    using Error::Error;
};

// Data that makes a statistic undefined, e.g. a pooled proportion of 0 or 1.
class DegenerateDataError : public Error {
public:
    using Error::Error;
};

class NotFoundError : public Error {
public:
    using Error::Error;
};

// The requested power cannot be reached at any sample size.
class UnattainablePowerError : public Error {
public:
    using Error::Error;
};

class DuplicateIdError : public Error {
public:
    explicit DuplicateIdError(std::string id, std::size_t line = 0);

    const std::string& id() const noexcept { return id_; }
    // 1-based input line, 0 when the record did not come from a file.
    std::size_t line() const noexcept { return line_; }

private:
    std::string id_;
    std::size_t line_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, std::string field, const std::string& what);

    std::size_t line() const noexcept { return line_; }
    const std::string& field() const noexcept { return field_; }

private:
    std::size_t line_;
    std::string field_;
};

}  // namespace rankstat
