#pragma once

#include <stdexcept>
#include <string>

namespace frlab {

/// Bad input: malformed structure, violated precondition, unsupported
/// parameters. The CLI maps this to exit code 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Well-formed input that cannot be served: enumeration or search caps,
/// missing repair helpers, too few symbols to decode. Exit code 3.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

namespace detail {

inline void require(bool cond, const std::string& msg) {
  if (!cond) throw ValidationError(msg);
}

}  // namespace detail
}  // namespace frlab
