#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "catconv/config_io.hpp"
#include "catconv/model.hpp"

namespace catconv::testing {

/// Species with the given constants and constant inlet/wall data.
struct SpeciesSetup {
  SpeciesParams params;
  double inlet = 0.0;
  double wall = 0.0;
};

inline ModelConfig make_config(const std::vector<SpeciesSetup>& species, int nr = 32, int nz = 64, double dt = 0.01,
                               double t_end = 1.0) {
  ModelConfig cfg;
  cfg.grid = {nr, nz, dt, t_end};
  for (const auto& s : species) {
    cfg.species.push_back(s.params);
    cfg.initial.inlet.emplace_back(cfg.grid.radial_nodes(), s.inlet);
    cfg.initial.wall_init.emplace_back(cfg.grid.axial_nodes(), s.wall);
  }
  return cfg;
}

inline ModelConfig constant_config(double c, int nr = 32, int nz = 64, double dt = 0.01, double t_end = 1.0) {
  return make_config({{{"A", 1, 1, 1, -1}, c, c}, {{"B", 1, 1, 1, +1}, c, c}}, nr, nz, dt, t_end);
}

inline std::string shipped_config_path() { return std::string(CATCONV_CONFIG_DIR) + "/co_oxidation.cfg"; }

inline ConfigDocument shipped_scenario() { return load_config(shipped_config_path()); }

inline double sup_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace catconv::testing
