#pragma once

#include <span>
#include <vector>

#include "catconv/model.hpp"
#include "catconv/tridiagonal.hpp"

namespace catconv {

/// Finite-volume discretization of (beta / r) d/dr (r d/dr .) on the radial nodes j = 0..nr-1
/// (row nr is the Dirichlet wall value). Row 0 is the symmetry closure 4 beta (C_1 - C_0) / dr^2.
struct RadialOperator {
  RadialOperator(const Grid& grid, double beta);

  double beta;
  std::vector<double> lower;   // coefficient of C_{j-1}
  std::vector<double> center;  // coefficient of C_j (negative)
  std::vector<double> upper;   // coefficient of C_{j+1}; upper[nr-1] multiplies the wall value
  std::vector<double> weight;  // 1 - r_j^2

  /// (L c)_j for j < nr; c has nr + 1 entries.
  double apply(std::span<const double> c, std::size_t j) const;
};

/// Backward-Euler march in z, solved for increments so constant data reproduce themselves exactly.
/// Row j: ((1 - r_j^2)/dz - L) (C^{k+1} - C^k) = L C^k, Dirichlet at r = 1.
class FluidMarcher {
 public:
  FluidMarcher(std::span<const SpeciesParams> params, const Grid& grid);

  /// Field at r = 1 is the wall vector (including the z = 0 corner); field at z = 0, r < 1 is the inlet.
  FluidField march(const WallField& wall, const InitialData& init) const;

  const Grid& grid() const noexcept { return grid_; }

 private:
  Grid grid_;
  std::vector<RadialOperator> ops_;
  std::vector<TridiagonalFactor> factors_;
};

FluidField march_fluid(const WallField& wall, const InitialData& init, std::span<const SpeciesParams> params,
                       const Grid& grid);

/// d C / d r at r = 1 by the second-order one-sided difference, per species and axial node.
std::vector<std::vector<double>> wall_flux_gradient(const FluidField& field, const Grid& grid);

/// (1 / beta) int_0^1 dC/dz r (1 - r^2) dr per species and axial node: centered z-differences
/// (second-order one-sided at the ends), trapezoid in r.
std::vector<std::vector<double>> wall_flux_integral(const FluidField& field, const Grid& grid,
                                                    std::span<const SpeciesParams> params);

}  // namespace catconv
