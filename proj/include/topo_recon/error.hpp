#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace topo_recon {

// Base of every exception thrown by the library. `kind()` is a short
// machine-readable tag used by the CLI for its one-line error report.
class Error : public std::runtime_error {
public:
    Error(std::string kind, const std::string& what)
        : std::runtime_error(what), kind_(std::move(kind)) {}

    const std::string& kind() const noexcept { return kind_; }

private:
    std::string kind_;
};

class InvalidArgument : public Error {
public:
    explicit InvalidArgument(const std::string& what) : Error("invalid_argument", what) {}
};

// Integration produced a non-finite state.
class IntegrationError : public Error {
public:
    IntegrationError(std::size_t step, const std::string& what)
        : Error("integration", what + " at step " + std::to_string(step)), step_(step) {}

    std::size_t step() const noexcept { return step_; }

private:
    std::size_t step_;
};

class ParseError : public Error {
public:
    ParseError(std::size_t line, const std::string& what)
        : Error("parse", (line ? "line " + std::to_string(line) + ": " : std::string()) + what),
          line_(line) {}

    // 1-based; 0 when the error is not tied to a line (e.g. empty file).
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

class IoError : public Error {
public:
    explicit IoError(const std::string& what) : Error("io", what) {}
};

class DegenerateInput : public Error {
public:
    explicit DegenerateInput(const std::string& what) : Error("degenerate_input", what) {}
};

class ResourceError : public Error {
public:
    explicit ResourceError(const std::string& what) : Error("resource", what) {}
};

// Input violates a documented precondition of a filtration algorithm.
class ContractViolation : public Error {
public:
    explicit ContractViolation(const std::string& what) : Error("contract", what) {}
};

} // namespace topo_recon
