#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace sentiframes {

// Malformed input document (bad syntax, wrong field types, unknown enum value).
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally well-formed input that breaks a model invariant.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& what) : std::runtime_error(what) {}
    ValidationError(const std::string& what, std::vector<std::string> details)
        : std::runtime_error(what), details_(std::move(details)) {}

    const std::vector<std::string>& details() const { return details_; }

private:
    std::vector<std::string> details_;
};

class IoError : public std::runtime_error {
public:
    explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

} // namespace sentiframes
