#include "catconv/error.hpp"

#include <fmt/format.h>

namespace catconv {

const char* to_string(ConfigIssue::Kind kind) noexcept {
  switch (kind) {
    case ConfigIssue::Kind::missing_key: return "MISSING_KEY";
    case ConfigIssue::Kind::unknown_key: return "UNKNOWN_KEY";
    case ConfigIssue::Kind::bad_number: return "BAD_NUMBER";
    case ConfigIssue::Kind::file_not_found: return "FILE_NOT_FOUND";
    case ConfigIssue::Kind::length_mismatch: return "LENGTH_MISMATCH";
    case ConfigIssue::Kind::syntax: return "SYNTAX";
  }
  return "UNKNOWN";
}

std::string describe(const ConfigIssue& issue) {
  std::string where = issue.section;
  if (!issue.key.empty()) where += (where.empty() ? "" : ".") + issue.key;
  if (issue.line > 0) return fmt::format("{} {} (line {}): {}", to_string(issue.kind), where, issue.line, issue.message);
  return fmt::format("{} {}: {}", to_string(issue.kind), where, issue.message);
}

namespace {
std::string join_issues(const std::vector<ConfigIssue>& issues) {
  std::string text = "invalid config";
  for (const auto& issue : issues) text += "\n  " + describe(issue);
  return text;
}
}  // namespace

ConfigError::ConfigError(std::vector<ConfigIssue> issues)
    : Error(ErrorCode::config, join_issues(issues)), issues_(std::move(issues)) {}

NonConvergedError::NonConvergedError(std::size_t step, std::vector<double> residuals)
    : Error(ErrorCode::non_converged,
            fmt::format("NON_CONVERGED at step {}: residual {:.3e} after {} iterations", step,
                        residuals.empty() ? 0.0 : residuals.back(), residuals.size())),
      step_(step),
      residuals_(std::move(residuals)) {}

}  // namespace catconv
