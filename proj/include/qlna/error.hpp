#pragma once

#include <stdexcept>
#include <string>

namespace qlna {

/// Error raised by any qlna module. The message is prefixed with the
/// module name ("params: L_g must be positive") so CLI output can be
/// traced back without a stack.
class Error : public std::runtime_error {
 public:
  Error(const std::string& module, const std::string& what)
      : std::runtime_error(module + ": " + what), module_(module) {}

  const std::string& module() const noexcept { return module_; }

 private:
  std::string module_;
};

}  // namespace qlna
