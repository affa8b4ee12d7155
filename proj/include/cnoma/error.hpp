#pragma once

#include <stdexcept>
#include <string>

namespace cnoma {

// Raised for any parameter, config or command that violates a model
// constraint. The CLI maps it to exit status 2.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

namespace detail {

inline void require(bool ok, const std::string& msg) {
  if (!ok) throw ValidationError(msg);
}

}  // namespace detail
}  // namespace cnoma
