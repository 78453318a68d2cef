#include "catconv/study.hpp"

#include <cmath>

#include "catconv/error.hpp"
#include "catconv/fluid_march.hpp"

namespace catconv {

namespace {

Grid graetz_grid(int nr, int nz) {
  Grid g;
  g.nr = nr;
  g.nz = nz;
  return g;
}

}  // namespace

FluidField graetz_field(int nr, int nz, double beta) {
  const auto grid = graetz_grid(nr, nz);
  const std::vector<SpeciesParams> params{{"c", beta, 1.0, 1.0, -1}};
  InitialData init;
  init.inlet = {std::vector<double>(grid.radial_nodes(), 1.0)};
  init.wall_init = {std::vector<double>(grid.axial_nodes(), 0.0)};
  WallField wall{init.wall_init, 0.0};
  return march_fluid(wall, init, params, grid);
}

double graetz_outlet_centerline(int nr, int nz, double beta) {
  const auto f = graetz_field(nr, nz, beta);
  return f(0, f.axial_nodes() - 1, 0);
}

double flux_form_gap(const FluidField& field, const Grid& grid, double beta, double z_from) {
  const std::vector<SpeciesParams> params{{"c", beta, 1.0, 1.0, -1}};
  const auto g = wall_flux_gradient(field, grid);
  const auto q = wall_flux_integral(field, grid, params);
  const auto first = static_cast<std::size_t>(std::ceil(z_from * grid.nz - 1e-9));
  const auto last = grid.axial_nodes() - 1;
  double sum = 0.0;
  for (std::size_t k = first; k <= last; ++k) {
    const double d = g[0][k] - q[0][k];
    const double w = (k == first || k == last) ? 0.5 : 1.0;
    sum += w * d * d * grid.dz();
  }
  return std::sqrt(sum);
}

ConvergenceStudy convergence_study(int levels, int base_nr, int radial_nz) {
  if (levels < 3 || base_nr < 4 || radial_nz < 4)
    throw Error(ErrorCode::invalid_argument, "convergence_study: need levels >= 3, base_nr >= 4, radial_nz >= 4");
  ConvergenceStudy s;
  for (int l = 0; l < levels; ++l) {
    const int nr = base_nr << l;
    s.radial.push_back({nr, radial_nz, graetz_outlet_centerline(nr, radial_nz)});
    const auto grid = graetz_grid(nr, 2 * nr);
    s.flux.push_back({nr, 2 * nr, flux_form_gap(graetz_field(nr, 2 * nr), grid)});
  }
  for (std::size_t l = 2; l < s.radial.size(); ++l) {
    const double d1 = std::abs(s.radial[l - 2].value - s.radial[l - 1].value);
    const double d2 = std::abs(s.radial[l - 1].value - s.radial[l].value);
    s.radial_order.push_back(std::log2(d1 / d2));
  }
  for (std::size_t l = 1; l < s.flux.size(); ++l)
    s.flux_order.push_back(std::log2(s.flux[l - 1].value / s.flux[l].value));
  return s;
}

}  // namespace catconv
