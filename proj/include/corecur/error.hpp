#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace corecur {

/// Base of every error the library raises. `name()` is the stable
/// identifier the CLI prints on failure.
class error : public std::runtime_error {
public:
    error(std::string name, const std::string& what)
        : std::runtime_error(what), name_(std::move(name)) {}

    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class domain_mismatch : public error {
public:
    explicit domain_mismatch(const std::string& what) : error("DomainMismatch", what) {}
};

class fuse_exceeded : public error {
public:
    explicit fuse_exceeded(std::size_t limit)
        : error("FuseExceeded", "node budget of " + std::to_string(limit) + " exhausted"),
          limit_(limit) {}
    fuse_exceeded(std::size_t limit, const std::string& what) : error("FuseExceeded", what), limit_(limit) {}

    std::size_t limit() const noexcept { return limit_; }

private:
    std::size_t limit_;
};

class arity_mismatch : public error {
public:
    arity_mismatch(std::size_t expected, std::size_t got)
        : error("ArityMismatch", "expected " + std::to_string(expected) + " child outputs, got " +
                                     std::to_string(got)) {}
};

class overflow_error : public error {
public:
    explicit overflow_error(const std::string& what) : error("Overflow", what) {}
};

class parse_error : public error {
public:
    parse_error(std::string kind, std::size_t line, const std::string& reason)
        : error(kind, "line " + std::to_string(line) + ": " + reason), kind_(std::move(kind)), line_(line) {}

    const std::string& kind() const noexcept { return kind_; }
    std::size_t line() const noexcept { return line_; }

private:
    std::string kind_;
    std::size_t line_;
};

}  // namespace corecur
