#pragma once

#include <vector>

#include "catconv/model.hpp"

namespace catconv {

/// Graetz problem: one species, inlet 1, wall held at 0, beta = 1.
FluidField graetz_field(int nr, int nz, double beta = 1.0);

/// Centerline value C(r = 0, z = 1).
double graetz_outlet_centerline(int nr, int nz, double beta = 1.0);

/// Discrete L2(z) gap between the gradient and integral wall fluxes over z in [z_from, 1]; z_from should fall on a node at every level compared.
/// The corner jump at z = 0 makes the flux singular there, hence the cut.
double flux_form_gap(const FluidField& field, const Grid& grid, double beta = 1.0, double z_from = 0.125);

struct RefinementLevel {
  int nr = 0;
  int nz = 0;
  double value = 0.0;
};

struct ConvergenceStudy {
  /// nr doubles from base_nr, nz fixed: centerline value at the outlet.
  std::vector<RefinementLevel> radial;
  /// log2(|u_h - u_h/2| / |u_h/2 - u_h/4|), one per consecutive triple.
  std::vector<double> radial_order;
  /// nr doubles from base_nr with nz = 2 nr: flux-form gap.
  std::vector<RefinementLevel> flux;
  /// log2(gap_h / gap_h/2), one per consecutive pair.
  std::vector<double> flux_order;
};

/// levels >= 3. Throws Error(invalid_argument) otherwise.
ConvergenceStudy convergence_study(int levels, int base_nr = 16, int radial_nz = 4096);

}  // namespace catconv
