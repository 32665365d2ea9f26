#pragma once

#include <stdexcept>
#include <string>

namespace thevenin {

/// Invalid configuration value. `key()` carries the dotted path of the
/// offending entry (e.g. "rwls.forgetting") when one is known.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  [[nodiscard]] const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

/// Raised when a recursion hits a non-positive innovation variance.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace thevenin
