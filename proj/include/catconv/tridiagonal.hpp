#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace catconv {

/// Thomas-algorithm factorization of a fixed tridiagonal matrix, reusable across right-hand sides.
/// Row i reads lower[i] x[i-1] + diag[i] x[i] + upper[i] x[i+1]; lower[0] and upper[n-1] are ignored.
/// No pivoting: construction throws Error(numerical) if a pivot is not strictly positive, which
/// cannot happen for the M-matrices this library builds.
class TridiagonalFactor {
 public:
  TridiagonalFactor() = default;
  TridiagonalFactor(std::span<const double> lower, std::span<const double> diag, std::span<const double> upper);

  std::size_t size() const noexcept { return inv_pivot_.size(); }

  /// Overwrites rhs with the solution.
  void solve(std::span<double> rhs) const;

 private:
  std::vector<double> lower_;
  std::vector<double> upper_star_;
  std::vector<double> inv_pivot_;
};

}  // namespace catconv
