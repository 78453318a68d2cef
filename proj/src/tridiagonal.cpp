#include "catconv/tridiagonal.hpp"

#include <fmt/format.h>

#include "catconv/error.hpp"

namespace catconv {

TridiagonalFactor::TridiagonalFactor(std::span<const double> lower, std::span<const double> diag,
                                     std::span<const double> upper)
    : lower_(lower.begin(), lower.end()), upper_star_(diag.size()), inv_pivot_(diag.size()) {
  const auto n = diag.size();
  if (n == 0 || lower.size() != n || upper.size() != n)
    throw Error(ErrorCode::invalid_argument, "tridiagonal: inconsistent band sizes");
  double prev_upper_star = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double pivot = diag[i] - (i > 0 ? lower[i] * prev_upper_star : 0.0);
    if (!(pivot > 0.0)) throw Error(ErrorCode::numerical, fmt::format("tridiagonal: pivot {} at row {}", pivot, i));
    inv_pivot_[i] = 1.0 / pivot;
    upper_star_[i] = (i + 1 < n ? upper[i] : 0.0) * inv_pivot_[i];
    prev_upper_star = upper_star_[i];
  }
}

void TridiagonalFactor::solve(std::span<double> rhs) const {
  const auto n = inv_pivot_.size();
  if (rhs.size() != n) throw Error(ErrorCode::invalid_argument, "tridiagonal: rhs size mismatch");
  rhs[0] *= inv_pivot_[0];
  for (std::size_t i = 1; i < n; ++i) rhs[i] = (rhs[i] - lower_[i] * rhs[i - 1]) * inv_pivot_[i];
  for (std::size_t i = n - 1; i-- > 0;) rhs[i] -= upper_star_[i] * rhs[i + 1];
}

}  // namespace catconv
