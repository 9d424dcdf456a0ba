#ifndef RWENO_ERROR_HPP_
#define RWENO_ERROR_HPP_

#include <stdexcept>
#include <string>

namespace rweno {

/// Invalid input, configuration or file content. Maps to CLI exit code 2.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

/// A computation that could not complete (NaN state, diverged training).
/// Maps to CLI exit code 1.
class RuntimeFailure : public std::runtime_error {
 public:
  explicit RuntimeFailure(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rweno

#endif  // RWENO_ERROR_HPP_
