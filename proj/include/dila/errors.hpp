#pragma once

#include <stdexcept>
#include <string>

namespace dila {

/// Malformed or incompatible input (registry mismatch, bad syntax, violated
/// precondition).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A configured computation budget (degree cap, pair cap, enumeration or
/// size cap) was exceeded.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace dila
