#pragma once

#include <span>
#include <vector>

#include "catconv/model.hpp"
#include "catconv/tridiagonal.hpp"

namespace catconv {

struct WallStepInput {
  const WallField& wall_prev;
  const std::vector<std::vector<double>>& flux;   // dC_if/dr at r = 1, per species and z node
  const std::vector<std::vector<double>>& rates;  // r_i at the lagged state, per species and z node
  double dt;
  std::span<const SpeciesParams> params;
};

/// Semi-implicit wall step with cached factorizations:
/// (I - dt theta D_zz)(C^{n+1} - C^n) = dt (theta D_zz C^n - gamma flux + delta rates),
/// D_zz with mirrored ghost nodes at z = 0 and z = 1 (homogeneous Neumann).
class WallStepper {
 public:
  WallStepper(std::span<const SpeciesParams> params, int nz, double dt);

  WallField step(const WallField& wall_prev, const std::vector<std::vector<double>>& flux,
                 const std::vector<std::vector<double>>& rates) const;

  double dt() const noexcept { return dt_; }

 private:
  std::vector<SpeciesParams> params_;
  int nz_;
  double dt_;
  std::vector<TridiagonalFactor> factors_;
};

WallField step_wall(const WallStepInput& input);

/// Trapezoid integral over z in [0, 1] of one wall profile.
double wall_integral(std::span<const double> profile);

}  // namespace catconv
