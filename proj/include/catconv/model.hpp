#pragma once

#include <cstddef>
#include <limits>
#include <map>
#include <span>
#include <string>
#include <vector>

namespace catconv {

/// Transport and coupling constants of one species (or of the temperature).
struct SpeciesParams {
  std::string name;
  double beta_f = 1.0;   // radial diffusivity in the fluid, > 0
  double gamma_s = 1.0;  // wall-coupling coefficient, > 0
  double theta_s = 1.0;  // axial diffusivity along the wall, >= 0
  int delta = -1;        // -1: consumed at the wall, +1: produced
};

/// Uniform grid on [0,1] x [0,1] plus the time step.
/// Radial nodes r_j = j/nr (j = 0..nr), axial nodes z_k = k/nz (k = 0..nz).
struct Grid {
  int nr = 32;
  int nz = 64;
  double dt = 1e-2;
  double t_end = 1.0;

  double dr() const noexcept { return 1.0 / nr; }
  double dz() const noexcept { return 1.0 / nz; }
  std::size_t radial_nodes() const noexcept { return static_cast<std::size_t>(nr) + 1; }
  std::size_t axial_nodes() const noexcept { return static_cast<std::size_t>(nz) + 1; }
  // Computed as j/nr so both endpoints are exact.
  double r(std::size_t j) const noexcept { return static_cast<double>(j) / nr; }
  double z(std::size_t k) const noexcept { return static_cast<double>(k) / nz; }
  /// Number of time steps needed to reach t_end (t_end / dt rounded to nearest, at least 1).
  std::size_t step_count() const noexcept;
};

/// Inlet profiles C_i0(r) on the radial grid and initial wall profiles C_is0(z) on the axial grid.
struct InitialData {
  std::vector<std::vector<double>> inlet;
  std::vector<std::vector<double>> wall_init;
};

struct Interval {
  double lo = 0.0;
  double hi = std::numeric_limits<double>::infinity();
};

/// Kinetics selection as it appears in a config: model name, named constants, per-species box.
struct KineticsSpec {
  std::string model = "zero";
  std::map<std::string, double> constants;
  std::vector<Interval> box;  // empty, or one entry per species
};

struct ModelConfig {
  std::vector<SpeciesParams> species;
  Grid grid;
  InitialData initial;
  KineticsSpec kinetics;

  std::size_t species_count() const noexcept { return species.size(); }
};

/// Concentrations (and temperature) inside the cylinder at one time level.
/// Storage is z-major: value(i, k, j) is species i at axial node k, radial node j.
class FluidField {
 public:
  FluidField() = default;
  FluidField(std::size_t species, std::size_t radial_nodes, std::size_t axial_nodes, double time = 0.0);

  std::size_t species_count() const noexcept { return values_.size(); }
  std::size_t radial_nodes() const noexcept { return nr1_; }
  std::size_t axial_nodes() const noexcept { return nz1_; }

  double& operator()(std::size_t i, std::size_t k, std::size_t j) { return values_[i][k * nr1_ + j]; }
  double operator()(std::size_t i, std::size_t k, std::size_t j) const { return values_[i][k * nr1_ + j]; }

  /// Radial profile of species i at axial node k.
  std::span<double> row(std::size_t i, std::size_t k) { return {values_[i].data() + k * nr1_, nr1_}; }
  std::span<const double> row(std::size_t i, std::size_t k) const {
    return {values_[i].data() + k * nr1_, nr1_};
  }
  const std::vector<double>& species(std::size_t i) const { return values_[i]; }
  std::vector<double>& species(std::size_t i) { return values_[i]; }

  double time = 0.0;

  friend bool operator==(const FluidField&, const FluidField&) = default;

 private:
  std::size_t nr1_ = 0;
  std::size_t nz1_ = 0;
  std::vector<std::vector<double>> values_;
};

/// Concentrations (and temperature) on the wall at one time level, one vector over z_k per species.
struct WallField {
  std::vector<std::vector<double>> values;
  double time = 0.0;

  std::size_t species_count() const noexcept { return values.size(); }
  friend bool operator==(const WallField&, const WallField&) = default;
};

struct ContractionDiagnostics {
  double mu = 0.0;         // sup_i (gamma/beta)^(1/2) / inf_i theta, +inf when inf theta = 0
  double threshold = 0.0;  // 2 / sqrt(e)
  double margin = 0.0;     // mu * sqrt(e) / 2
  double alpha_opt = 0.0;  // alpha^2 = 2 / mu
  bool satisfied = false;
  bool degenerate = false;  // some theta_s == 0

  friend bool operator==(const ContractionDiagnostics&, const ContractionDiagnostics&) = default;
};

enum class Severity { warning, error };

struct ValidationIssue {
  Severity severity;
  std::string code;     // e.g. "NONPOSITIVE", "DEGENERATE", "COMPATIBILITY"
  std::string species;  // empty for grid/global issues
  std::string field;
  std::string message;

  friend bool operator==(const ValidationIssue&, const ValidationIssue&) = default;
};

struct ValidationReport {
  std::vector<ValidationIssue> issues;

  bool has_errors() const noexcept;
  std::size_t error_count() const noexcept;
  std::size_t warning_count() const noexcept;
  friend bool operator==(const ValidationReport&, const ValidationReport&) = default;
};

/// 2 / sqrt(e): the contraction threshold on mu.
double contraction_threshold() noexcept;

ContractionDiagnostics contraction_margin(std::span<const SpeciesParams> params);

/// Range checks, the inlet/wall compatibility at z = 0 and the contraction condition.
/// Never throws for bad values; everything lands in the report.
ValidationReport validate_config(const ModelConfig& cfg);

/// Trapezoid weights of the radial quadrature with weight r (1 - r^2), nodal form.
std::vector<double> radial_quadrature_weights(const Grid& grid);

/// Discrete sup_k int_0^T int_0^1 U^2 r (1 - r^2) dr dt for each species.
/// Trapezoid in r, left-endpoint rectangle in t. Throws on inconsistent history shapes.
std::vector<double> weighted_fluid_norm(std::span<const FluidField> history, const Grid& grid);

/// Wall field at t = 0 taken from the initial data.
WallField initial_wall(const ModelConfig& cfg);

}  // namespace catconv
