#include "catconv/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <fmt/format.h>

#include "catconv/error.hpp"

namespace catconv {

std::size_t Grid::step_count() const noexcept {
  if (!(dt > 0.0) || !(t_end > 0.0)) return 1;
  const auto n = static_cast<std::size_t>(std::llround(t_end / dt));
  return std::max<std::size_t>(n, 1);
}

FluidField::FluidField(std::size_t species, std::size_t radial_nodes, std::size_t axial_nodes, double t)
    : time(t),
      nr1_(radial_nodes),
      nz1_(axial_nodes),
      values_(species, std::vector<double>(radial_nodes * axial_nodes, 0.0)) {}

bool ValidationReport::has_errors() const noexcept { return error_count() > 0; }

std::size_t ValidationReport::error_count() const noexcept {
  return static_cast<std::size_t>(
      std::count_if(issues.begin(), issues.end(), [](const auto& x) { return x.severity == Severity::error; }));
}

std::size_t ValidationReport::warning_count() const noexcept { return issues.size() - error_count(); }

double contraction_threshold() noexcept { return 2.0 / std::sqrt(std::numbers::e); }

ContractionDiagnostics contraction_margin(std::span<const SpeciesParams> params) {
  if (params.empty()) throw Error(ErrorCode::invalid_argument, "contraction_margin: no species");
  double sup_ratio = 0.0;
  double inf_theta = std::numeric_limits<double>::infinity();
  for (const auto& p : params) {
    if (!(p.beta_f > 0.0))
      throw Error(ErrorCode::invalid_argument, fmt::format("contraction_margin: species {} has beta_f <= 0", p.name));
    sup_ratio = std::max(sup_ratio, std::sqrt(p.gamma_s / p.beta_f));
    inf_theta = std::min(inf_theta, p.theta_s);
  }

  ContractionDiagnostics d;
  d.threshold = contraction_threshold();
  d.degenerate = !(inf_theta > 0.0);
  if (d.degenerate) {
    d.mu = std::numeric_limits<double>::infinity();
    d.margin = d.mu;
    d.alpha_opt = 0.0;
    d.satisfied = false;
    return d;
  }
  const double half_sqrt_e = std::sqrt(std::numbers::e) / 2.0;
  d.mu = sup_ratio / inf_theta;
  d.margin = d.mu * half_sqrt_e;
  d.alpha_opt = std::sqrt(2.0 / d.mu);

  // Three algebraically equivalent forms of the same condition; all must agree.
  const bool by_mu = d.mu < d.threshold;
  const bool by_margin = d.margin < 1.0;
  const bool by_theorem = half_sqrt_e * sup_ratio < inf_theta;
  d.satisfied = by_mu && by_margin && by_theorem;
  return d;
}

namespace {

void add(ValidationReport& report, Severity severity, std::string code, std::string species, std::string field,
         std::string message) {
  report.issues.push_back({severity, std::move(code), std::move(species), std::move(field), std::move(message)});
}

bool all_finite(const std::vector<double>& v) {
  return std::all_of(v.begin(), v.end(), [](double x) { return std::isfinite(x); });
}

}  // namespace

ValidationReport validate_config(const ModelConfig& cfg) {
  ValidationReport report;
  const auto& g = cfg.grid;

  if (cfg.species.empty()) add(report, Severity::error, "NO_SPECIES", "", "species", "at least one species is required");
  if (g.nr < 4) add(report, Severity::error, "GRID", "", "grid.nr", fmt::format("nr = {} < 4", g.nr));
  if (g.nz < 4) add(report, Severity::error, "GRID", "", "grid.nz", fmt::format("nz = {} < 4", g.nz));
  if (!(g.dt > 0.0) || !std::isfinite(g.dt))
    add(report, Severity::error, "GRID", "", "grid.dt", fmt::format("dt = {} must be positive", g.dt));
  if (!(g.t_end >= g.dt) || !std::isfinite(g.t_end))
    add(report, Severity::error, "GRID", "", "grid.t_end", fmt::format("t_end = {} must be >= dt", g.t_end));

  for (std::size_t a = 0; a < cfg.species.size(); ++a)
    for (std::size_t b = a + 1; b < cfg.species.size(); ++b)
      if (cfg.species[a].name == cfg.species[b].name)
        add(report, Severity::error, "DUPLICATE", cfg.species[a].name, "name", "species declared twice");

  for (const auto& p : cfg.species) {
    if (!(p.beta_f > 0.0) || !std::isfinite(p.beta_f))
      add(report, Severity::error, "NONPOSITIVE", p.name, "beta_f", fmt::format("beta_f = {} must be > 0", p.beta_f));
    if (!(p.gamma_s > 0.0) || !std::isfinite(p.gamma_s))
      add(report, Severity::error, "NONPOSITIVE", p.name, "gamma_s", fmt::format("gamma_s = {} must be > 0", p.gamma_s));
    if (!(p.theta_s >= 0.0) || !std::isfinite(p.theta_s))
      add(report, Severity::error, "NEGATIVE", p.name, "theta_s", fmt::format("theta_s = {} must be >= 0", p.theta_s));
    else if (p.theta_s == 0.0)
      add(report, Severity::warning, "DEGENERATE", p.name, "theta_s", "theta_s = 0: existence condition needs inf theta > 0");
    if (p.delta != -1 && p.delta != 1)
      add(report, Severity::error, "DELTA", p.name, "delta", fmt::format("delta = {} must be -1 or +1", p.delta));
  }

  const auto n = cfg.species.size();
  const auto& init = cfg.initial;
  if (init.inlet.size() != n || init.wall_init.size() != n) {
    add(report, Severity::error, "INITIAL_DATA", "", "initial", "one inlet and one wall profile per species required");
  } else {
    for (std::size_t i = 0; i < n; ++i) {
      const auto& name = cfg.species[i].name;
      const auto& inlet = init.inlet[i];
      const auto& wall = init.wall_init[i];
      bool shapes_ok = true;
      if (g.nr >= 1 && inlet.size() != g.radial_nodes()) {
        add(report, Severity::error, "LENGTH", name, "inlet",
            fmt::format("{} samples, grid needs {}", inlet.size(), g.radial_nodes()));
        shapes_ok = false;
      }
      if (g.nz >= 1 && wall.size() != g.axial_nodes()) {
        add(report, Severity::error, "LENGTH", name, "wall_init",
            fmt::format("{} samples, grid needs {}", wall.size(), g.axial_nodes()));
        shapes_ok = false;
      }
      if (!all_finite(inlet)) add(report, Severity::error, "NONFINITE", name, "inlet", "non-finite sample");
      if (!all_finite(wall)) add(report, Severity::error, "NONFINITE", name, "wall_init", "non-finite sample");
      if (shapes_ok && !inlet.empty() && !wall.empty()) {
        const double gap = std::abs(inlet.back() - wall.front());
        if (gap > 1e-12)
          add(report, Severity::warning, "COMPATIBILITY", name, "inlet/wall_init",
              fmt::format("C_i0(1) = {} differs from C_is0(0) = {} (gap {:.3e})", inlet.back(), wall.front(), gap));
      }
    }
  }

  const auto& box = cfg.kinetics.box;
  if (!box.empty()) {
    if (box.size() != n) {
      add(report, Severity::error, "KINETICS_BOX", "", "box", "kinetics box needs one interval per species");
    } else {
      for (std::size_t i = 0; i < n; ++i)
        if (!(box[i].lo <= box[i].hi) || std::isnan(box[i].lo))
          add(report, Severity::error, "KINETICS_BOX", cfg.species[i].name, "box", "box needs lo <= hi");
    }
  }

  const bool params_ok = !cfg.species.empty() && std::all_of(cfg.species.begin(), cfg.species.end(), [](const auto& p) {
    return p.beta_f > 0.0 && std::isfinite(p.beta_f) && p.theta_s >= 0.0;
  });
  if (params_ok) {
    const auto d = contraction_margin(cfg.species);
    if (!d.satisfied)
      add(report, Severity::warning, "CONTRACTION", "", "species",
          fmt::format("mu = {:.6g} is not below 2/sqrt(e) = {:.9f}; existence not guaranteed", d.mu, d.threshold));
  }
  return report;
}

std::vector<double> radial_quadrature_weights(const Grid& grid) {
  const auto n1 = grid.radial_nodes();
  std::vector<double> w(n1);
  const double dr = grid.dr();
  for (std::size_t j = 0; j < n1; ++j) {
    const double r = grid.r(j);
    const double trap = (j == 0 || j + 1 == n1) ? 0.5 : 1.0;
    w[j] = trap * dr * r * (1.0 - r * r);
  }
  return w;
}

std::vector<double> weighted_fluid_norm(std::span<const FluidField> history, const Grid& grid) {
  if (history.empty()) throw Error(ErrorCode::invalid_argument, "weighted_fluid_norm: empty history");
  const auto& first = history.front();
  for (const auto& f : history) {
    if (f.species_count() != first.species_count() || f.radial_nodes() != grid.radial_nodes() ||
        f.axial_nodes() != grid.axial_nodes())
      throw Error(ErrorCode::invalid_argument, "weighted_fluid_norm: history fields do not share the grid");
  }
  const auto w = radial_quadrature_weights(grid);
  const auto ns = first.species_count();
  const auto nz1 = grid.axial_nodes();

  std::vector<double> result(ns, 0.0);
  std::vector<double> station(nz1);
  for (std::size_t i = 0; i < ns; ++i) {
    std::fill(station.begin(), station.end(), 0.0);
    for (std::size_t n = 0; n + 1 < history.size(); ++n) {
      const double dt = history[n + 1].time - history[n].time;
      for (std::size_t k = 0; k < nz1; ++k) {
        const auto row = history[n].row(i, k);
        double acc = 0.0;
        for (std::size_t j = 0; j < row.size(); ++j) acc += w[j] * row[j] * row[j];
        station[k] += dt * acc;
      }
    }
    result[i] = *std::max_element(station.begin(), station.end());
  }
  return result;
}

WallField initial_wall(const ModelConfig& cfg) {
  WallField wall;
  wall.values = cfg.initial.wall_init;
  wall.time = 0.0;
  return wall;
}

}  // namespace catconv
