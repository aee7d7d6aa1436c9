// SPDX-License-Identifier: Apache-2.0
// Copyright 2026 kgval contributors

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace kgval {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// Malformed Turtle input. Line and column are 1-based.
class SyntaxError : public Error {
public:
    SyntaxError(std::size_t line, std::size_t column, const std::string& message)
        : Error("line " + std::to_string(line) + ", column " + std::to_string(column) + ": " +
                message),
          line_(line), column_(column), detail_(message) {}

    std::size_t line() const noexcept { return line_; }
    std::size_t column() const noexcept { return column_; }
    const std::string& detail() const noexcept { return detail_; }

private:
    std::size_t line_;
    std::size_t column_;
    std::string detail_;
};

class UnknownPrefix : public Error {
public:
    explicit UnknownPrefix(std::string prefix)
        : Error("unknown prefix '" + prefix + ":'"), prefix_(std::move(prefix)) {}
    const std::string& prefix() const noexcept { return prefix_; }

private:
    std::string prefix_;
};

class PreconditionError : public Error {
public:
    using Error::Error;
};

class NetworkError : public Error {
public:
    using Error::Error;
};

// The endpoint did not answer in time. Callers may retry with a smaller page.
class EndpointTimeout : public NetworkError {
public:
    using NetworkError::NetworkError;
};

class RangeError : public Error {
public:
    using Error::Error;
};

class DomainSpecError : public Error {
public:
    using Error::Error;
};

class ConfigError : public Error {
public:
    using Error::Error;
};

class FixtureFormatError : public Error {
public:
    FixtureFormatError(const std::string& path, const std::string& detail)
        : Error("fixture " + path + ": " + detail), path_(path) {}
    const std::string& path() const noexcept { return path_; }

private:
    std::string path_;
};

class SourceError : public Error {
public:
    enum class Kind { Network, Auth, Parse, RateLimited };

    SourceError(std::string sourceId, Kind kind, const std::string& cause)
        : Error(sourceId + " (" + kindName(kind) + "): " + cause), sourceId_(std::move(sourceId)),
          kind_(kind) {}

    const std::string& sourceId() const noexcept { return sourceId_; }
    Kind kind() const noexcept { return kind_; }

    static const char* kindName(Kind kind) noexcept {
        switch (kind) {
            case Kind::Network:
                return "network";
            case Kind::Auth:
                return "auth";
            case Kind::Parse:
                return "parse";
            case Kind::RateLimited:
                return "rate-limited";
        }
        return "unknown";
    }

private:
    std::string sourceId_;
    Kind kind_;
};

class NegativeWeight : public Error {
public:
    explicit NegativeWeight(std::size_t index)
        : Error("weight at index " + std::to_string(index) + " is negative"), index_(index) {}
    std::size_t index() const noexcept { return index_; }

private:
    std::size_t index_;
};

class EmptyAttributeSpace : public Error {
public:
    using Error::Error;
};

class MissingLabel : public Error {
public:
    MissingLabel(const std::string& subject, const std::string& property)
        : Error("no baseline label for (" + subject + ", " + property + ")") {}
};

class EmptyEvaluation : public Error {
public:
    EmptyEvaluation() : Error("nothing to evaluate") {}
};

} // namespace kgval
