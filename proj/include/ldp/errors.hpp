#ifndef LDP_ERRORS_HPP
#define LDP_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace ldp {

// Malformed input: unreadable files, bad JSON, missing keys, bad flags.
class InputError : public std::runtime_error {
 public:
  explicit InputError(const std::string& what) : std::runtime_error(what) {}
};

// Structurally well-formed input that violates a model constraint
// (invalid metric, value outside the support, rejected initial values, ...).
class ConstraintError : public std::runtime_error {
 public:
  explicit ConstraintError(const std::string& what) : std::runtime_error(what) {}
};

// Request beyond supported capacity (e.g. graph universes past 7 nodes).
class CapacityError : public std::runtime_error {
 public:
  explicit CapacityError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace ldp

#endif  // LDP_ERRORS_HPP
