#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>

namespace videoset {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
    virtual const char* kind() const noexcept { return "error"; }
};

/// A file could not be opened, read or written.
class IoError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "io"; }
};

/// A file was readable but its contents did not parse.
class ParseError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "parse"; }
};

/// Parsed data violates a record invariant. Carries the offending field and,
/// when it applies, the element index.
class ValidationError : public Error {
public:
    ValidationError(std::string field, std::optional<std::size_t> index, const std::string& what)
        : Error(describe(field, index, what)), field_(std::move(field)), index_(index) {}

    const std::string& field() const noexcept { return field_; }
    std::optional<std::size_t> index() const noexcept { return index_; }
    const char* kind() const noexcept override { return "validation"; }

private:
    static std::string describe(const std::string& field, std::optional<std::size_t> index,
                                const std::string& what) {
        std::string msg = field;
        if (index) msg += "[" + std::to_string(*index) + "]";
        return msg + ": " + what;
    }

    std::string field_;
    std::optional<std::size_t> index_;
};

/// A caller passed arguments outside an operation's domain (n > m, empty input...).
class ArgumentError : public Error {
public:
    using Error::Error;
    const char* kind() const noexcept override { return "argument"; }
};

}  // namespace videoset
