#pragma once

#include <stdexcept>
#include <string>
#include <utility>

namespace pou {

// Violation of a semantic precondition or invariant on otherwise well-formed
// data (mass not 1, chain condition broken, degenerate boundary distance, ...).
// `precondition` is a stable snake_case identifier suitable for matching in
// tests and in machine-readable error documents.
class DomainError : public std::runtime_error {
public:
    DomainError(std::string precondition, const std::string& message)
        : std::runtime_error(message), precondition_(std::move(precondition)) {}

    const std::string& precondition() const noexcept { return precondition_; }

private:
    std::string precondition_;
};

// Structurally malformed input: bad JSON, wrong document shape, unknown kind or
// field, unparseable rational, illegal label characters. Distinct from
// DomainError so the CLI can map the two classes to different exit codes.
class ParseError : public std::runtime_error {
public:
    explicit ParseError(const std::string& message) : std::runtime_error(message) {}
};

} // namespace pou
