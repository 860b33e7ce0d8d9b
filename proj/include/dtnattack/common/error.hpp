#pragma once

#include <stdexcept>
#include <string>

namespace dtn {

/// Failure categories. The CLI turns these into distinct exit codes.
enum class ErrorCategory {
    Usage = 2,
    Parse = 3,
    Validation = 4,
    Simulation = 5,
    Io = 6,
};

class Error : public std::runtime_error {
public:
    Error(ErrorCategory category, const std::string& what)
        : std::runtime_error(what), category_(category) {}

    ErrorCategory category() const noexcept { return category_; }

private:
    ErrorCategory category_;
};

class ParseError : public Error {
public:
    ParseError(const std::string& what, int line)
        : Error(ErrorCategory::Parse,
                line > 0 ? "line " + std::to_string(line) + ": " + what : what),
          line_(line) {}

    int line() const noexcept { return line_; }

private:
    int line_;
};

class ValidationError : public Error {
public:
    explicit ValidationError(const std::string& what) : Error(ErrorCategory::Validation, what) {}
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error(ErrorCategory::Io, what) {}
};

}  // namespace dtn
