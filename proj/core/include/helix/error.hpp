#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace helix {

// Base of every error raised by the library. Callers that only care about
// "something in the input was wrong" catch this.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class MissingColumn : public Error {
public:
    explicit MissingColumn(std::string column)
        : Error("missing column '" + column + "' in CSV header"), column_(std::move(column)) {}
    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

class MalformedRow : public Error {
public:
    MalformedRow(std::size_t line, std::string reason)
        : Error("line " + std::to_string(line) + ": " + reason), line_(line), reason_(std::move(reason)) {}
    std::size_t line() const noexcept { return line_; }
    const std::string& reason() const noexcept { return reason_; }

private:
    std::size_t line_;
    std::string reason_;
};

class UnmappedNace : public Error {
public:
    explicit UnmappedNace(int code)
        : Error("NACE code " + std::to_string(code) + " has no technology group"), code_(code) {}
    int code() const noexcept { return code_; }

private:
    int code_;
};

class InvalidConfig : public Error {
public:
    using Error::Error;
};

class EmptyDataset : public Error {
public:
    EmptyDataset() : Error("dataset contains no firms") {}
};

class ZeroTotal : public Error {
public:
    ZeroTotal() : Error("entropy requested with zero total count") {}
};

class DegenerateTable : public Error {
public:
    using Error::Error;
};

}  // namespace helix
