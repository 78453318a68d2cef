#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace catconv {

enum class ErrorCode {
  invalid_argument,
  config,
  non_converged,
  io,
  numerical,
};

/// Base exception for everything the library throws on purpose.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what) : std::runtime_error(what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// One problem found while reading a config document.
struct ConfigIssue {
  enum class Kind { missing_key, unknown_key, bad_number, file_not_found, length_mismatch, syntax };
  Kind kind;
  std::string section;
  std::string key;
  std::size_t line = 0;  // 0 when the issue is not tied to a line (e.g. missing key)
  std::string message;
};

const char* to_string(ConfigIssue::Kind kind) noexcept;
std::string describe(const ConfigIssue& issue);

class ConfigError : public Error {
 public:
  explicit ConfigError(std::vector<ConfigIssue> issues);
  const std::vector<ConfigIssue>& issues() const noexcept { return issues_; }

 private:
  std::vector<ConfigIssue> issues_;
};

/// Raised by the coupler when the per-step fixed point fails to reach its tolerance.
class NonConvergedError : public Error {
 public:
  NonConvergedError(std::size_t step, std::vector<double> residuals);
  std::size_t step() const noexcept { return step_; }
  const std::vector<double>& residuals() const noexcept { return residuals_; }

 private:
  std::size_t step_;
  std::vector<double> residuals_;
};

}  // namespace catconv
