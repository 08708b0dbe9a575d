#pragma once

#include <stdexcept>
#include <string>

namespace wrand {

// Bad arguments, malformed JSON, schema violations. CLI exit code 2.
class SchemaError : public std::runtime_error {
public:
  explicit SchemaError(const std::string& what) : std::runtime_error(what) {}
};

// A checked mathematical invariant failed. CLI exit code 1.
class InvariantViolation : public std::runtime_error {
public:
  explicit InvariantViolation(const std::string& what) : std::runtime_error(what) {}
};

// An enumeration would exceed a configured budget. CLI exit code 3.
class ResourceCapError : public std::runtime_error {
public:
  explicit ResourceCapError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace wrand
