#pragma once

#include <stdexcept>
#include <string>

namespace rwm {

// Invalid parameters or configuration: bad delta, unknown config key, etc.
class ConfigError : public std::invalid_argument {
 public:
  explicit ConfigError(const std::string& what) : std::invalid_argument(what) {}
};

}  // namespace rwm
