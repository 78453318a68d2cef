#include "catconv/fluid_march.hpp"

#include <fmt/format.h>

#include "catconv/error.hpp"

namespace catconv {

RadialOperator::RadialOperator(const Grid& grid, double beta_f) : beta(beta_f) {
  const auto nr = static_cast<std::size_t>(grid.nr);
  const double dr = grid.dr();
  const double inv_dr2 = 1.0 / (dr * dr);
  lower.assign(nr, 0.0);
  center.assign(nr, 0.0);
  upper.assign(nr, 0.0);
  weight.assign(nr, 0.0);

  // Control volume [0, dr/2]: r dr integrates to dr^2/8, face flux (dr/2)(C_1 - C_0)/dr.
  upper[0] = 4.0 * beta * inv_dr2;
  center[0] = -upper[0];
  weight[0] = 1.0;
  for (std::size_t j = 1; j < nr; ++j) {
    const double r = grid.r(j);
    const double r_minus = (static_cast<double>(j) - 0.5) * dr;
    const double r_plus = (static_cast<double>(j) + 0.5) * dr;
    lower[j] = beta * r_minus / r * inv_dr2;
    upper[j] = beta * r_plus / r * inv_dr2;
    center[j] = -(lower[j] + upper[j]);
    weight[j] = 1.0 - r * r;
  }
}

double RadialOperator::apply(std::span<const double> c, std::size_t j) const {
  // Written on differences so that constant profiles give exactly zero.
  const double right = upper[j] * (c[j + 1] - c[j]);
  const double left = j > 0 ? lower[j] * (c[j - 1] - c[j]) : 0.0;
  return right + left;
}

FluidMarcher::FluidMarcher(std::span<const SpeciesParams> params, const Grid& grid) : grid_(grid) {
  if (grid.nr < 2 || grid.nz < 1) throw Error(ErrorCode::invalid_argument, "fluid march needs nr >= 2 and nz >= 1");
  const auto nr = static_cast<std::size_t>(grid.nr);
  const double inv_dz = 1.0 / grid.dz();
  ops_.reserve(params.size());
  factors_.reserve(params.size());
  std::vector<double> lo(nr), diag(nr), up(nr);
  for (const auto& p : params) {
    if (!(p.beta_f > 0.0))
      throw Error(ErrorCode::invalid_argument, fmt::format("species {}: beta_f must be positive", p.name));
    const auto& op = ops_.emplace_back(grid, p.beta_f);
    for (std::size_t j = 0; j < nr; ++j) {
      lo[j] = -op.lower[j];
      up[j] = -op.upper[j];
      diag[j] = op.weight[j] * inv_dz - op.center[j];
    }
    factors_.emplace_back(lo, diag, up);
  }
}

FluidField FluidMarcher::march(const WallField& wall, const InitialData& init) const {
  const auto ns = ops_.size();
  const auto nr = static_cast<std::size_t>(grid_.nr);
  const auto nz1 = grid_.axial_nodes();
  if (wall.values.size() != ns || init.inlet.size() != ns)
    throw Error(ErrorCode::invalid_argument, "fluid march: species count mismatch");

  FluidField field(ns, nr + 1, nz1, wall.time);
  std::vector<double> rhs(nr);
  for (std::size_t i = 0; i < ns; ++i) {
    const auto& w = wall.values[i];
    const auto& inlet = init.inlet[i];
    if (w.size() != nz1 || inlet.size() != nr + 1)
      throw Error(ErrorCode::invalid_argument, "fluid march: profile length does not match the grid");
    const auto& op = ops_[i];

    auto first = field.row(i, 0);
    std::copy(inlet.begin(), inlet.end() - 1, first.begin());
    first[nr] = w[0];

    for (std::size_t k = 0; k + 1 < nz1; ++k) {
      const auto prev = field.row(i, k);
      auto next = field.row(i, k + 1);
      const double wall_step = w[k + 1] - prev[nr];
      for (std::size_t j = 0; j < nr; ++j) rhs[j] = op.apply(prev, j);
      rhs[nr - 1] += op.upper[nr - 1] * wall_step;
      factors_[i].solve(rhs);
      for (std::size_t j = 0; j < nr; ++j) next[j] = prev[j] + rhs[j];
      next[nr] = w[k + 1];
    }
  }
  return field;
}

FluidField march_fluid(const WallField& wall, const InitialData& init, std::span<const SpeciesParams> params,
                       const Grid& grid) {
  return FluidMarcher(params, grid).march(wall, init);
}

std::vector<std::vector<double>> wall_flux_gradient(const FluidField& field, const Grid& grid) {
  if (grid.nr < 2) throw Error(ErrorCode::invalid_argument, "wall_flux_gradient needs nr >= 2");
  if (field.radial_nodes() != grid.radial_nodes() || field.axial_nodes() != grid.axial_nodes())
    throw Error(ErrorCode::invalid_argument, "wall_flux_gradient: field does not match the grid");
  const auto nr = static_cast<std::size_t>(grid.nr);
  const double inv_2dr = 1.0 / (2.0 * grid.dr());
  std::vector<std::vector<double>> flux(field.species_count(), std::vector<double>(field.axial_nodes()));
  for (std::size_t i = 0; i < field.species_count(); ++i) {
    for (std::size_t k = 0; k < field.axial_nodes(); ++k) {
      const auto c = field.row(i, k);
      // (3 C_n - 4 C_{n-1} + C_{n-2}) / (2 dr), grouped into differences.
      flux[i][k] = (3.0 * (c[nr] - c[nr - 1]) - (c[nr - 1] - c[nr - 2])) * inv_2dr;
    }
  }
  return flux;
}

std::vector<std::vector<double>> wall_flux_integral(const FluidField& field, const Grid& grid,
                                                    std::span<const SpeciesParams> params) {
  if (grid.nz < 2) throw Error(ErrorCode::invalid_argument, "wall_flux_integral needs nz >= 2");
  if (field.radial_nodes() != grid.radial_nodes() || field.axial_nodes() != grid.axial_nodes())
    throw Error(ErrorCode::invalid_argument, "wall_flux_integral: field does not match the grid");
  if (params.size() != field.species_count())
    throw Error(ErrorCode::invalid_argument, "wall_flux_integral: species count mismatch");
  const auto w = radial_quadrature_weights(grid);
  const auto nz1 = field.axial_nodes();
  const auto nr1 = field.radial_nodes();
  const double inv_2dz = 1.0 / (2.0 * grid.dz());

  std::vector<std::vector<double>> flux(field.species_count(), std::vector<double>(nz1));
  for (std::size_t i = 0; i < field.species_count(); ++i) {
    for (std::size_t k = 0; k < nz1; ++k) {
      double acc = 0.0;
      for (std::size_t j = 0; j < nr1; ++j) {
        double dcdz;
        if (k == 0)
          dcdz = (4.0 * (field(i, 1, j) - field(i, 0, j)) - (field(i, 2, j) - field(i, 0, j))) * inv_2dz;
        else if (k + 1 == nz1)
          dcdz = (4.0 * (field(i, k, j) - field(i, k - 1, j)) - (field(i, k, j) - field(i, k - 2, j))) * inv_2dz;
        else
          dcdz = (field(i, k + 1, j) - field(i, k - 1, j)) * inv_2dz;
        acc += w[j] * dcdz;
      }
      flux[i][k] = acc / params[i].beta_f;
    }
  }
  return flux;
}

}  // namespace catconv
