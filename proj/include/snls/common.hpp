#pragma once

#include <complex>
#include <stdexcept>
#include <string>
#include <vector>

namespace snls {

using Complex = std::complex<double>;

inline constexpr double kPi = 3.141592653589793238462643383279502884;

/// Generic runtime failure (solver aborts, I/O problems, precondition violations
/// that carry a diagnostic message).
class SnlsError : public std::runtime_error {
 public:
  explicit SnlsError(const std::string& what) : std::runtime_error(what) {}
};

/// Configuration rejection. Carries every violation found, not just the first.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(std::vector<std::string> violations)
      : std::runtime_error(join(violations)), violations_(std::move(violations)) {}

  const std::vector<std::string>& violations() const { return violations_; }

 private:
  static std::string join(const std::vector<std::string>& v) {
    std::string s = "invalid configuration:";
    for (const auto& line : v) {
      s += "\n  - " + line;
    }
    return s;
  }
  std::vector<std::string> violations_;
};

}  // namespace snls
