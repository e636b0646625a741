#pragma once

#include <stdexcept>
#include <string>

namespace ergaps {

// Bad argument or out-of-range request. CLI exit code 2.
class parameter_error : public std::runtime_error {
 public:
  explicit parameter_error(const std::string& msg) : std::runtime_error(msg) {}
};

// Configured budget exceeded (memory, search nodes, sieve size). CLI exit code 3.
class resource_error : public std::runtime_error {
 public:
  explicit resource_error(const std::string& msg) : std::runtime_error(msg) {}
};

// A numerical routine failed to reach its accuracy target. CLI exit code 3.
class numerical_error : public std::runtime_error {
 public:
  explicit numerical_error(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace ergaps
